//! Label sets `C_n = {[1], ..., [n]}` and the rerouting maps `R_0`, `R_i`
//! that steer labels through dendriform partial compositions.
//!
//! Labels are 1-based throughout this module.

use std::fmt;

use thiserror::Error;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum CombinatError {
    #[error("out of range: m={m}, i={i}, n={n}, r={r}")]
    OutOfRange {
        m: usize,
        i: usize,
        n: usize,
        r: usize,
    },
    #[error("label {value} outside C_{arity}")]
    BadLabel { value: usize, arity: usize },
}

/// An element `[r]` of `C_n`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Label {
    value: usize,
    arity: usize,
}

impl Label {
    pub fn new(value: usize, arity: usize) -> Result<Label, CombinatError> {
        if value == 0 || value > arity {
            return Err(CombinatError::BadLabel { value, arity });
        }
        Ok(Label { value, arity })
    }

    pub fn value(self) -> usize {
        self.value
    }

    pub fn arity(self) -> usize {
        self.arity
    }

    /// 0-based position of the label, for indexing.
    pub fn index(self) -> usize {
        self.value - 1
    }
}

impl fmt::Display for Label {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "[{}]", self.value)
    }
}

/// An element of `K[C_n]` with integer coefficients.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct FormalLabelSum {
    arity: usize,
    coeffs: Vec<i64>,
}

impl FormalLabelSum {
    pub fn zero(arity: usize) -> FormalLabelSum {
        FormalLabelSum {
            arity,
            coeffs: vec![0; arity],
        }
    }

    pub fn single(label: Label) -> FormalLabelSum {
        let mut s = FormalLabelSum::zero(label.arity);
        s.coeffs[label.index()] = 1;
        s
    }

    /// `[1] + [2] + ... + [n]`
    pub fn all(arity: usize) -> FormalLabelSum {
        FormalLabelSum {
            arity,
            coeffs: vec![1; arity],
        }
    }

    pub fn arity(&self) -> usize {
        self.arity
    }

    pub fn coefficient(&self, label: Label) -> i64 {
        self.coeffs[label.index()]
    }

    /// Nonzero terms in increasing label order.
    pub fn terms(&self) -> impl Iterator<Item = (Label, i64)> + '_ {
        self.coeffs
            .iter()
            .enumerate()
            .filter(|(_, &c)| c != 0)
            .map(move |(k, &c)| {
                (
                    Label {
                        value: k + 1,
                        arity: self.arity,
                    },
                    c,
                )
            })
    }
}

impl fmt::Display for FormalLabelSum {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let parts: Vec<String> = self
            .terms()
            .map(|(l, c)| {
                if c == 1 {
                    l.to_string()
                } else {
                    format!("{c}{l}")
                }
            })
            .collect();
        if parts.is_empty() {
            write!(f, "0")
        } else {
            write!(f, "{}", parts.join(" + "))
        }
    }
}

fn check(m: usize, i: usize, n: usize, r: Label) -> Result<(), CombinatError> {
    if m == 0 || n == 0 || i == 0 || i > m || r.arity != m + n - 1 {
        return Err(CombinatError::OutOfRange {
            m,
            i,
            n,
            r: r.value,
        });
    }
    Ok(())
}

/// `R_0(m; 1, .., n, .., 1)` with `n` in slot `i`: `C_{m+n-1} -> C_m`.
pub fn r0(m: usize, i: usize, n: usize, r: Label) -> Result<Label, CombinatError> {
    check(m, i, n, r)?;
    let v = r.value;
    let out = if v < i {
        v
    } else if v < i + n {
        i
    } else {
        v - n + 1
    };
    Ok(Label {
        value: out,
        arity: m,
    })
}

/// `R_i(m; 1, .., n, .., 1)` with `n` in slot `i`: `C_{m+n-1} -> K[C_n]`.
pub fn ri(m: usize, i: usize, n: usize, r: Label) -> Result<FormalLabelSum, CombinatError> {
    check(m, i, n, r)?;
    let v = r.value;
    if v >= i && v < i + n {
        Ok(FormalLabelSum::single(Label {
            value: v - (i - 1),
            arity: n,
        }))
    } else {
        Ok(FormalLabelSum::all(n))
    }
}

/// Precomputed routing for one `(m, i, n)`: for each 0-based output label,
/// the 0-based outer label and the 0-based inner labels (all coefficients 1).
#[derive(Debug, Clone)]
pub(crate) struct Routing {
    pub outer: Vec<usize>,
    pub inner: Vec<Vec<usize>>,
}

pub(crate) fn routing(m: usize, i: usize, n: usize) -> Routing {
    let total = m + n - 1;
    let mut outer = Vec::with_capacity(total);
    let mut inner = Vec::with_capacity(total);
    for v in 1..=total {
        let r = Label {
            value: v,
            arity: total,
        };
        outer.push(r0(m, i, n, r).expect("in range").index());
        let sum = ri(m, i, n, r).expect("in range");
        debug_assert!(sum.terms().all(|(_, c)| c == 1));
        inner.push(sum.terms().map(|(l, _)| l.index()).collect());
    }
    Routing { outer, inner }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn l(v: usize, a: usize) -> Label {
        Label::new(v, a).unwrap()
    }

    #[test]
    fn r0_examples() {
        for m in 1..5 {
            for i in 1..=m {
                for r in 1..=m {
                    assert_eq!(r0(m, i, 1, l(r, m)).unwrap(), l(r, m));
                }
            }
        }
        assert_eq!(r0(2, 2, 2, l(3, 3)).unwrap(), l(2, 2));
        assert_eq!(r0(3, 2, 2, l(4, 4)).unwrap(), l(3, 3));
    }

    #[test]
    fn ri_examples() {
        assert_eq!(ri(2, 2, 2, l(1, 3)).unwrap(), FormalLabelSum::all(2));
        assert_eq!(ri(2, 2, 2, l(1, 3)).unwrap().to_string(), "[1] + [2]");
        assert_eq!(
            ri(2, 1, 2, l(2, 3)).unwrap(),
            FormalLabelSum::single(l(2, 2))
        );
        for m in 1..5 {
            for i in 1..=m {
                for r in 1..=m {
                    assert_eq!(
                        ri(m, i, 1, l(r, m)).unwrap(),
                        FormalLabelSum::single(l(1, 1))
                    );
                }
            }
        }
    }

    #[test]
    fn range_errors() {
        assert!(Label::new(0, 3).is_err());
        assert!(Label::new(4, 3).is_err());
        assert!(r0(2, 3, 2, l(1, 3)).is_err());
        assert!(r0(2, 1, 2, l(1, 2)).is_err());
        assert!(ri(2, 0, 2, l(1, 3)).is_err());
    }

    #[test]
    fn exhaustive_ranges() {
        for m in 1..=5 {
            for n in 1..=5 {
                for i in 1..=m {
                    for r in 1..=m + n - 1 {
                        let r = l(r, m + n - 1);
                        let out = r0(m, i, n, r).unwrap();
                        assert!(out.value() >= 1 && out.value() <= m);
                        let sum = ri(m, i, n, r).unwrap();
                        assert_eq!(sum.arity(), n);
                        assert!(sum.terms().count() >= 1);
                        assert!(sum.terms().all(|(t, c)| c == 1 && t.value() <= n));
                    }
                }
            }
        }
    }
}
