//! Verdicts for one-sided valuation bounds.

use serde::Serialize;

use crate::arith::{Elem, Val};

#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum Verdict {
    Certified,
    Inconclusive,
    Violated,
}

/// A claim `v(x) >= claimed` about a quantity known to absolute precision
/// `precision`, whose computed valuation is `achieved` (`Inf` when the
/// computed value is zero at that precision).
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct BoundCheck {
    pub claimed: Val,
    pub achieved: Val,
    pub residual_precision: Val,
    pub verdict: Verdict,
}

impl BoundCheck {
    pub fn judge(achieved: Val, precision: Val, claimed: Val) -> BoundCheck {
        let verdict = if achieved < precision {
            if achieved >= claimed {
                Verdict::Certified
            } else {
                Verdict::Violated
            }
        } else if precision >= claimed {
            // indistinguishable from zero, and the precision already meets the claim
            Verdict::Certified
        } else {
            Verdict::Inconclusive
        };
        BoundCheck { claimed, achieved, residual_precision: precision, verdict }
    }

    pub fn for_elem(x: &Elem, claimed: Val) -> BoundCheck {
        Self::judge(x.val(), x.precision(), claimed)
    }

    /// An exactly known valuation (no precision loss).
    pub fn exact(achieved: Val, claimed: Val) -> BoundCheck {
        Self::judge(achieved, Val::Inf, claimed)
    }

    pub fn ok(&self) -> bool {
        self.verdict == Verdict::Certified
    }
}

/// Counts of verdicts over a sweep.
#[derive(Clone, Debug, Default, PartialEq, Eq, Serialize)]
pub struct Tally {
    pub certified: u64,
    pub inconclusive: u64,
    pub violated: u64,
}

impl Tally {
    pub fn add(&mut self, v: Verdict) {
        match v {
            Verdict::Certified => self.certified += 1,
            Verdict::Inconclusive => self.inconclusive += 1,
            Verdict::Violated => self.violated += 1,
        }
    }

    pub fn merge(&mut self, other: &Tally) {
        self.certified += other.certified;
        self.inconclusive += other.inconclusive;
        self.violated += other.violated;
    }

    pub fn all_certified(&self) -> bool {
        self.inconclusive == 0 && self.violated == 0
    }

    /// Overall verdict: any violation dominates, then any inconclusive entry.
    pub fn verdict(&self) -> Verdict {
        if self.violated > 0 {
            Verdict::Violated
        } else if self.inconclusive > 0 {
            Verdict::Inconclusive
        } else {
            Verdict::Certified
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn judging() {
        assert_eq!(BoundCheck::judge(Val::int(3), Val::int(10), Val::int(2)).verdict, Verdict::Certified);
        assert_eq!(BoundCheck::judge(Val::int(1), Val::int(10), Val::int(2)).verdict, Verdict::Violated);
        assert_eq!(BoundCheck::judge(Val::Inf, Val::int(10), Val::int(2)).verdict, Verdict::Certified);
        assert_eq!(BoundCheck::judge(Val::Inf, Val::int(10), Val::int(12)).verdict, Verdict::Inconclusive);
        assert_eq!(BoundCheck::exact(Val::Inf, Val::int(12)).verdict, Verdict::Certified);
    }
}
