//! Run configuration, read from TOML and overridable from the command line.

use std::path::{Path, PathBuf};

use ltfourier::arith::{Elem, Field, FieldSpec, LocalField, Val};
use ltfourier::formal_group::{elliptic_formal_group, EllipticModel, FormalModule};
use serde::{Deserialize, Serialize};

use crate::CliError;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize, clap::ValueEnum)]
#[serde(rename_all = "kebab-case")]
pub enum GroupKindCfg {
    LubinTate,
    Multiplicative,
    Elliptic,
}

/// Which formal group to build and over which field.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct GroupConfig {
    pub kind: GroupKindCfg,
    pub p: u64,
    #[serde(default = "one")]
    pub h: usize,
    /// Monic, low-to-high. A standard choice is used when absent.
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub unramified_poly: Option<Vec<i64>>,
    /// Low-to-high; each coefficient as its `h` integer coordinates.
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub eisenstein_poly: Option<Vec<Vec<i64>>>,
    /// Lubin–Tate uniformizer as integer coordinates `[[u^0 Π^0, u^1 Π^0, ..], [.. Π^1 ..]]`.
    /// Defaults to `p` (unramified) or `Π`.
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub uniformizer: Option<Vec<Vec<i64>>>,
}

/// Weierstrass model `y^2 = 4x^3 - g2 x - g3`.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct CurveConfig {
    pub g2: i64,
    pub g3: i64,
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct Orders {
    /// Order of the formal group series.
    pub m: usize,
    /// t-order of torsion sums.
    pub m_t: usize,
    /// X-order of bivariate objects.
    pub m_x: usize,
    /// Grade cutoff for exp(-aϖλ); derived from the precision when absent.
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub grade_cutoff: Option<usize>,
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct Grid {
    pub levels: Vec<u32>,
    pub n_max: usize,
    pub k_max: usize,
    pub d_max: usize,
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct BhConfig {
    pub b: i64,
    pub c: i64,
    pub l_max: u32,
    pub n_max: usize,
}

#[derive(Clone, Debug, Default, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct OutputConfig {
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub json: Option<PathBuf>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub csv: Option<PathBuf>,
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
#[serde(default, deny_unknown_fields)]
pub struct RunConfig {
    /// Absolute precision P, in powers of p.
    pub precision: i64,
    /// Extra working digits above `precision`, spent on precision losses.
    pub guard: i64,
    pub group: GroupConfig,
    pub curve: CurveConfig,
    pub orders: Orders,
    pub grid: Grid,
    pub bh: BhConfig,
    pub output: OutputConfig,
}

fn one() -> usize {
    1
}

impl Default for RunConfig {
    fn default() -> RunConfig {
        RunConfig {
            precision: 24,
            guard: 16,
            group: GroupConfig { kind: GroupKindCfg::LubinTate, p: 3, h: 2, unramified_poly: None, eisenstein_poly: None, uniformizer: None },
            curve: CurveConfig { g2: 4, g3: 0 },
            orders: Orders { m: 60, m_t: 200, m_x: 40, grade_cutoff: None },
            grid: Grid { levels: vec![1, 2], n_max: 20, k_max: 60, d_max: 2 },
            bh: BhConfig { b: 2, c: 2, l_max: 2, n_max: 100 },
            output: OutputConfig::default(),
        }
    }
}

impl RunConfig {
    pub fn load(path: &Path) -> Result<RunConfig, CliError> {
        let text = std::fs::read_to_string(path).map_err(|e| CliError::Config(format!("cannot read {}: {e}", path.display())))?;
        Self::from_toml(&text)
    }

    pub fn from_toml(text: &str) -> Result<RunConfig, CliError> {
        toml::from_str(text).map_err(|e| CliError::Config(e.to_string()))
    }

    pub fn to_toml(&self) -> String {
        toml::to_string(self).expect("config serializes")
    }

    /// Checks everything that can be checked without computing.
    pub fn validate(&self) -> Result<(), CliError> {
        if self.precision <= 0 {
            return Err(CliError::Config("precision must be positive".into()));
        }
        if self.guard < 0 {
            return Err(CliError::Config("guard digits cannot be negative".into()));
        }
        if self.grid.levels.is_empty() || self.grid.levels.contains(&0) {
            return Err(CliError::Config("levels must be a nonempty list of positive integers".into()));
        }
        if self.orders.m < 2 || self.orders.m_t < 2 || self.orders.m_x < 2 {
            return Err(CliError::Config("series orders must be at least 2".into()));
        }
        let field = self.field()?;
        match self.group.kind {
            GroupKindCfg::Multiplicative if field.degree() != 1 => {
                return Err(CliError::Config("the multiplicative group needs h = 1 and no Eisenstein polynomial".into()));
            }
            GroupKindCfg::Elliptic => self.check_curve(field.p())?,
            _ => {}
        }
        for (name, x) in [("b", self.bh.b), ("c", self.bh.c)] {
            if x < 2 || x % self.group.p as i64 == 0 {
                return Err(CliError::Config(format!("{name} = {x} must be at least 2 and prime to p")));
            }
        }
        Ok(())
    }

    pub fn model(&self) -> Result<EllipticModel, CliError> {
        EllipticModel::from_ints(self.curve.g2, self.curve.g3).map_err(|e| CliError::Config(e.to_string()))
    }

    pub fn check_curve(&self, p: u64) -> Result<(), CliError> {
        self.model()?.check_supersingular(p).map_err(|e| CliError::Config(e.to_string()))
    }

    pub fn field_spec(&self) -> FieldSpec {
        FieldSpec {
            p: self.group.p,
            unramified_poly: self.group.unramified_poly.clone(),
            h: self.group.h,
            eisenstein_poly: self.group.eisenstein_poly.clone(),
            precision: self.precision,
        }
    }

    /// The working field, at `precision + guard`.
    pub fn field(&self) -> Result<Field, CliError> {
        self.field_at(self.working_precision())
    }

    pub fn working_precision(&self) -> i64 {
        self.precision + self.guard
    }

    pub fn field_at(&self, precision: i64) -> Result<Field, CliError> {
        let mut spec = self.field_spec();
        spec.precision = precision;
        LocalField::from_spec(&spec).map_err(|e| CliError::Config(e.to_string()))
    }

    /// The configured group with series to order `order`, over the working field.
    pub fn group(&self, order: usize) -> Result<FormalModule, CliError> {
        let field = self.field()?;
        Ok(match self.group.kind {
            GroupKindCfg::Multiplicative => FormalModule::multiplicative(&field, order)?,
            GroupKindCfg::LubinTate => {
                let pi = match &self.group.uniformizer {
                    Some(rows) => {
                        let coords: Vec<Vec<_>> = rows.iter().map(|r| r.iter().map(|&c| c.into()).collect()).collect();
                        Elem::from_coords(&field, &coords, 0, Val::Inf).map_err(|e| CliError::Config(format!("uniformizer: {e}")))?
                    }
                    None if field.e() == 1 => Elem::from_int(&field, field.p() as i64),
                    None => Elem::uniformizer(&field),
                };
                FormalModule::lubin_tate(&field, &pi, order).map_err(|e| CliError::Config(e.to_string()))?
            }
            GroupKindCfg::Elliptic => elliptic_formal_group(&self.model()?, &field, order)?.0,
        })
    }
}
