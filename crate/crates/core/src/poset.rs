//! Finite partial orders and joins, read as colimits in a thin category.
//!
//! A finite poset is a carrier of named elements with an explicit relation
//! table. The order may be listed extensionally (the reflexive closure of
//! the given pairs is taken, then antisymmetry and transitivity are
//! validated eagerly) or built from the two stock instances: a numeric
//! interval under `<=` and an integer interval under divisibility.
//!
//! A poset is a category with at most one arrow between any two objects, so
//! a join of `a` and `b` is exactly a colimit vertex for the span
//! `a <- w -> b` over any common lower bound `w`: it receives arrows from
//! `a` and `b`, and every upper bound receives a (trivially unique) arrow
//! from it. `join_as_colimit_check` verifies that reading by full scan.

use std::collections::BTreeSet;

use thiserror::Error;

use crate::category::is_token;

/// Errors from poset construction and join queries.
#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum PosetError {
    #[error("invalid poset: {reason}")]
    InvalidPoset { reason: String },
    #[error("element {element:?} is not in the carrier")]
    NotInCarrier { element: String },
    #[error("{witness:?} is not a common lower bound of {a:?} and {b:?}")]
    NotLowerBound { witness: String, a: String, b: String },
    #[error("{a:?} and {b:?} have no join")]
    NoJoin { a: String, b: String },
}

/// A finite poset with an explicit `<=` table.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct FinitePoset {
    carrier: BTreeSet<String>,
    leq: BTreeSet<(String, String)>,
}

impl FinitePoset {
    /// Builds a poset from listed pairs `(x, y)` meaning `x <= y`. The
    /// reflexive closure is taken automatically; antisymmetry and
    /// transitivity of the result are validated (an O(n^3) scan; carriers
    /// here are small and failing fast beats failing inside a query).
    pub fn from_pairs(
        carrier: impl IntoIterator<Item = String>,
        pairs: impl IntoIterator<Item = (String, String)>,
    ) -> Result<Self, PosetError> {
        let carrier: BTreeSet<String> = carrier.into_iter().collect();
        for elem in &carrier {
            if !is_token(elem) {
                return Err(PosetError::InvalidPoset {
                    reason: format!("element name {elem:?} is not a token"),
                });
            }
        }
        let mut leq: BTreeSet<(String, String)> =
            carrier.iter().map(|e| (e.clone(), e.clone())).collect();
        for (x, y) in pairs {
            for end in [&x, &y] {
                if !carrier.contains(end) {
                    return Err(PosetError::InvalidPoset {
                        reason: format!("relation mentions {end:?} outside the carrier"),
                    });
                }
            }
            leq.insert((x, y));
        }
        for (x, y) in &leq {
            if x != y && leq.contains(&(y.clone(), x.clone())) {
                return Err(PosetError::InvalidPoset {
                    reason: format!("antisymmetry fails on {x:?} and {y:?}"),
                });
            }
        }
        for (x, y) in &leq {
            for (y2, z) in &leq {
                if y == y2 && !leq.contains(&(x.clone(), z.clone())) {
                    return Err(PosetError::InvalidPoset {
                        reason: format!("transitivity fails: {x:?} <= {y:?} <= {z:?} but not {x:?} <= {z:?}"),
                    });
                }
            }
        }
        Ok(FinitePoset { carrier, leq })
    }

    /// The interval `{lo..=hi}` under the usual numeric order.
    pub fn numeric_range(lo: i64, hi: i64) -> Result<Self, PosetError> {
        if lo > hi {
            return Err(PosetError::InvalidPoset {
                reason: format!("empty range {lo}..={hi}"),
            });
        }
        let carrier: BTreeSet<String> = (lo..=hi).map(|n| n.to_string()).collect();
        let mut leq = BTreeSet::new();
        for x in lo..=hi {
            for y in x..=hi {
                leq.insert((x.to_string(), y.to_string()));
            }
        }
        Ok(FinitePoset { carrier, leq })
    }

    /// The interval `{lo..=hi}` of positive integers under divisibility.
    pub fn divisibility_range(lo: u64, hi: u64) -> Result<Self, PosetError> {
        if lo == 0 {
            return Err(PosetError::InvalidPoset {
                reason: "divisibility needs positive integers".to_string(),
            });
        }
        if lo > hi {
            return Err(PosetError::InvalidPoset {
                reason: format!("empty range {lo}..={hi}"),
            });
        }
        let carrier: BTreeSet<String> = (lo..=hi).map(|n| n.to_string()).collect();
        let mut leq = BTreeSet::new();
        for x in lo..=hi {
            for y in lo..=hi {
                if y % x == 0 {
                    leq.insert((x.to_string(), y.to_string()));
                }
            }
        }
        Ok(FinitePoset { carrier, leq })
    }

    pub fn carrier(&self) -> impl Iterator<Item = &String> {
        self.carrier.iter()
    }

    pub fn contains(&self, elem: &str) -> bool {
        self.carrier.contains(elem)
    }

    /// Whether `x <= y`. Both must be carrier elements.
    pub fn leq(&self, x: &str, y: &str) -> Result<bool, PosetError> {
        for elem in [x, y] {
            if !self.carrier.contains(elem) {
                return Err(PosetError::NotInCarrier {
                    element: elem.to_string(),
                });
            }
        }
        Ok(self.leq.contains(&(x.to_string(), y.to_string())))
    }

    /// All upper bounds of `{a, b}`, in carrier order.
    pub fn upper_bounds(&self, a: &str, b: &str) -> Result<Vec<String>, PosetError> {
        let mut out = Vec::new();
        for c in &self.carrier {
            if self.leq(a, c)? && self.leq(b, c)? {
                out.push(c.clone());
            }
        }
        Ok(out)
    }
}

/// Result of a join query: the least upper bound, or the fact that the
/// upper-bound set has no minimum (possibly because it is empty).
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum JoinOutcome {
    Join(String),
    NoJoin,
}

/// Least upper bound of `a` and `b` by full scan of the carrier.
pub fn poset_join(p: &FinitePoset, a: &str, b: &str) -> Result<JoinOutcome, PosetError> {
    let ubs = p.upper_bounds(a, b)?;
    for candidate in &ubs {
        if ubs.iter().all(|c| p.leq(candidate, c).expect("scanned elements are in the carrier")) {
            return Ok(JoinOutcome::Join(candidate.clone()));
        }
    }
    Ok(JoinOutcome::NoJoin)
}

/// Evidence that a join behaves as the colimit vertex of a span in the thin
/// category of the poset.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct JoinColimitReport {
    pub join: String,
    /// All upper bounds of the pair, each of which must receive the unique
    /// arrow from the join.
    pub upper_bounds: Vec<String>,
    /// `a <= join` and `b <= join` (the injections exist).
    pub receives_injections: bool,
    /// `join <= c` for every upper bound `c` (mediating arrows exist;
    /// uniqueness is automatic in a thin category).
    pub mediates_to_all: bool,
}

impl JoinColimitReport {
    pub fn confirmed(&self) -> bool {
        self.receives_injections && self.mediates_to_all
    }
}

/// Confirms that the join of `a` and `b` is the colimit of the span
/// `a <- w -> b`, where `w` is a common lower bound supplying the span.
///
/// Errors with `NotLowerBound` when `w` fails its precondition and
/// propagates `NoJoin` when the pair has no join.
pub fn join_as_colimit_check(
    p: &FinitePoset,
    a: &str,
    b: &str,
    w: &str,
) -> Result<JoinColimitReport, PosetError> {
    if !(p.leq(w, a)? && p.leq(w, b)?) {
        return Err(PosetError::NotLowerBound {
            witness: w.to_string(),
            a: a.to_string(),
            b: b.to_string(),
        });
    }
    let join = match poset_join(p, a, b)? {
        JoinOutcome::Join(j) => j,
        JoinOutcome::NoJoin => {
            return Err(PosetError::NoJoin {
                a: a.to_string(),
                b: b.to_string(),
            })
        }
    };
    let upper_bounds = p.upper_bounds(a, b)?;
    let receives_injections = p.leq(a, &join)? && p.leq(b, &join)?;
    let mediates_to_all = upper_bounds
        .iter()
        .map(|c| p.leq(&join, c))
        .collect::<Result<Vec<_>, _>>()?
        .into_iter()
        .all(|ok| ok);
    Ok(JoinColimitReport {
        join,
        upper_bounds,
        receives_injections,
        mediates_to_all,
    })
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn numeric_join_is_max() {
        let p = FinitePoset::numeric_range(1, 10).unwrap();
        assert_eq!(poset_join(&p, "2", "3").unwrap(), JoinOutcome::Join("3".into()));
        assert_eq!(poset_join(&p, "7", "7").unwrap(), JoinOutcome::Join("7".into()));
    }

    #[test]
    fn divisibility_join_is_lcm_when_present() {
        let p = FinitePoset::divisibility_range(1, 60).unwrap();
        assert_eq!(poset_join(&p, "4", "6").unwrap(), JoinOutcome::Join("12".into()));
        // Upper bounds of {4, 6} in {1..60} are the multiples of 12.
        assert_eq!(
            p.upper_bounds("4", "6").unwrap(),
            vec!["12", "24", "36", "48", "60"]
        );
        // lcm(7, 9) = 63 > 60: empty upper-bound set.
        assert_eq!(poset_join(&p, "7", "9").unwrap(), JoinOutcome::NoJoin);
    }

    #[test]
    fn antichain_has_no_join() {
        let p = FinitePoset::from_pairs(
            ["a".to_string(), "b".to_string()],
            [],
        )
        .unwrap();
        assert_eq!(poset_join(&p, "a", "b").unwrap(), JoinOutcome::NoJoin);
    }

    #[test]
    fn join_query_outside_carrier_is_an_error() {
        let p = FinitePoset::numeric_range(1, 3).unwrap();
        assert!(matches!(
            poset_join(&p, "1", "9"),
            Err(PosetError::NotInCarrier { .. })
        ));
    }

    #[test]
    fn poset_validation_catches_broken_orders() {
        // Antisymmetry violation: a <= b and b <= a with a != b.
        assert!(FinitePoset::from_pairs(
            ["a".to_string(), "b".to_string()],
            [("a".to_string(), "b".to_string()), ("b".to_string(), "a".to_string())],
        )
        .is_err());
        // Transitivity violation: a <= b <= c without a <= c.
        assert!(FinitePoset::from_pairs(
            ["a".to_string(), "b".to_string(), "c".to_string()],
            [("a".to_string(), "b".to_string()), ("b".to_string(), "c".to_string())],
        )
        .is_err());
    }

    #[test]
    fn join_as_colimit_on_numeric_span() {
        let p = FinitePoset::numeric_range(1, 10).unwrap();
        let report = join_as_colimit_check(&p, "2", "3", "1").unwrap();
        assert_eq!(report.join, "3");
        assert!(report.confirmed());
    }

    #[test]
    fn join_as_colimit_on_divisibility_span() {
        let p = FinitePoset::divisibility_range(1, 60).unwrap();
        let report = join_as_colimit_check(&p, "4", "6", "2").unwrap();
        assert_eq!(report.join, "12");
        assert_eq!(report.upper_bounds, vec!["12", "24", "36", "48", "60"]);
        assert!(report.confirmed());
    }

    #[test]
    fn join_as_colimit_propagates_no_join() {
        let p = FinitePoset::from_pairs(
            ["w".to_string(), "a".to_string(), "b".to_string()],
            [("w".to_string(), "a".to_string()), ("w".to_string(), "b".to_string())],
        )
        .unwrap();
        assert!(matches!(
            join_as_colimit_check(&p, "a", "b", "w"),
            Err(PosetError::NoJoin { .. })
        ));
    }

    #[test]
    fn join_as_colimit_rejects_non_lower_bound() {
        let p = FinitePoset::numeric_range(1, 10).unwrap();
        assert!(matches!(
            join_as_colimit_check(&p, "2", "3", "5"),
            Err(PosetError::NotLowerBound { .. })
        ));
    }
}
