//! Symbolic descriptions of infinite sequences `y_1, y_2, …`.

use serde::{Deserialize, Serialize};

use crate::ext_rat::ExtRat;

/// A sequence whose partial sums and supremum are computed in closed form.
///
/// Indices start at 1. `Tail(k, s)` is `s` with its first `k − 1` terms
/// dropped.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(tag = "kind", rename_all = "snake_case")]
pub enum SeriesSpec<E> {
    /// `y_n = first · ratio^(n−1)` embedded through the entry's scalar map.
    Geometric {
        first: ExtRat,
        ratio: ExtRat,
    },
    Constant {
        term: E,
    },
    /// `y_n` is the `n`-th unit vector.
    IndicatorStream,
    FiniteThenZero {
        terms: Vec<E>,
    },
    Scaled {
        factor: u64,
        inner: Box<SeriesSpec<E>>,
    },
    Tail {
        start: u64,
        inner: Box<SeriesSpec<E>>,
    },
}

impl<E> SeriesSpec<E> {
    pub fn geometric(first: ExtRat, ratio: ExtRat) -> Self {
        SeriesSpec::Geometric { first, ratio }
    }

    pub fn scaled(factor: u64, inner: SeriesSpec<E>) -> Self {
        SeriesSpec::Scaled {
            factor,
            inner: Box::new(inner),
        }
    }

    pub fn tail(start: u64, inner: SeriesSpec<E>) -> Self {
        SeriesSpec::Tail {
            start,
            inner: Box::new(inner),
        }
    }

    /// Checks the numeric side conditions that do not depend on an entry.
    pub fn validate(&self) -> Result<(), String> {
        match self {
            SeriesSpec::Geometric { ratio, .. } => {
                if ratio.is_zero() || *ratio >= ExtRat::one() {
                    Err(format!("geometric ratio {ratio} is not in (0,1)"))
                } else {
                    Ok(())
                }
            }
            SeriesSpec::Scaled { factor, inner } => {
                if *factor == 0 {
                    Err("scale factor must be positive".into())
                } else {
                    inner.validate()
                }
            }
            SeriesSpec::Tail { start, inner } => {
                if *start == 0 {
                    Err("tail start must be positive".into())
                } else {
                    inner.validate()
                }
            }
            _ => Ok(()),
        }
    }

    pub fn try_map<F, T, Err>(&self, f: &mut F) -> Result<SeriesSpec<T>, Err>
    where
        F: FnMut(&E) -> Result<T, Err>,
    {
        Ok(match self {
            SeriesSpec::Geometric { first, ratio } => SeriesSpec::Geometric {
                first: first.clone(),
                ratio: ratio.clone(),
            },
            SeriesSpec::Constant { term } => SeriesSpec::Constant { term: f(term)? },
            SeriesSpec::IndicatorStream => SeriesSpec::IndicatorStream,
            SeriesSpec::FiniteThenZero { terms } => SeriesSpec::FiniteThenZero {
                terms: terms.iter().map(&mut *f).collect::<Result<_, _>>()?,
            },
            SeriesSpec::Scaled { factor, inner } => SeriesSpec::Scaled {
                factor: *factor,
                inner: Box::new(inner.try_map(f)?),
            },
            SeriesSpec::Tail { start, inner } => SeriesSpec::Tail {
                start: *start,
                inner: Box::new(inner.try_map(f)?),
            },
        })
    }

    /// Whether every term past some index is zero.
    pub fn eventually_zero(&self) -> bool {
        match self {
            SeriesSpec::FiniteThenZero { .. } => true,
            SeriesSpec::Scaled { inner, .. } | SeriesSpec::Tail { inner, .. } => inner.eventually_zero(),
            _ => false,
        }
    }
}

impl<E: Clone> SeriesSpec<E> {
    /// Pushes a tail shift inward where a closed form exists.
    ///
    /// Indicator streams keep an explicit shift; the entry evaluates it.
    pub fn shifted(&self, start: u64) -> SeriesSpec<E> {
        if start <= 1 {
            return self.clone();
        }
        match self {
            SeriesSpec::Geometric { first, ratio } => {
                let mut f = first.clone();
                for _ in 1..start {
                    f = f.mul(ratio);
                }
                SeriesSpec::Geometric {
                    first: f,
                    ratio: ratio.clone(),
                }
            }
            SeriesSpec::Constant { term } => SeriesSpec::Constant { term: term.clone() },
            SeriesSpec::IndicatorStream => SeriesSpec::tail(start, SeriesSpec::IndicatorStream),
            SeriesSpec::FiniteThenZero { terms } => SeriesSpec::FiniteThenZero {
                terms: terms.iter().skip((start - 1) as usize).cloned().collect(),
            },
            SeriesSpec::Scaled { factor, inner } => SeriesSpec::scaled(*factor, inner.shifted(start)),
            SeriesSpec::Tail { start: s, inner } => inner.shifted(s + start - 1),
        }
    }
}
