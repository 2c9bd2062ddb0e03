//! Exhaustive search over integer boxes.
//!
//! Points are visited in lexicographic order (first variable most
//! significant). The index range is cut into contiguous chunks, one per
//! worker; every worker reports the first hit in its chunk and the smallest
//! index wins, so results never depend on the number of workers.

use std::collections::BTreeMap;
use std::sync::atomic::{AtomicU64, Ordering};

use serde::Serialize;

use super::{PLFunction, TropicalError};

/// Default ceiling on the number of points a single comparison may visit.
pub const DEFAULT_BOX_CAP: u64 = 100_000_000;

/// A product of closed integer intervals, one per named variable.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct IntBox {
    vars: Vec<String>,
    lo: Vec<i64>,
    hi: Vec<i64>,
}

impl IntBox {
    pub fn new<S: Into<String>, I: IntoIterator<Item = (S, i64, i64)>>(
        ranges: I,
    ) -> Result<Self, TropicalError> {
        let mut b = IntBox {
            vars: Vec::new(),
            lo: Vec::new(),
            hi: Vec::new(),
        };
        for (v, lo, hi) in ranges {
            let v = v.into();
            if lo > hi {
                return Err(TropicalError::InvalidBox(format!("empty range for `{v}`")));
            }
            if b.vars.contains(&v) {
                return Err(TropicalError::InvalidBox(format!("duplicate variable `{v}`")));
            }
            b.vars.push(v);
            b.lo.push(lo);
            b.hi.push(hi);
        }
        Ok(b)
    }

    /// `[-r, r]` in every listed variable.
    pub fn cube(vars: &[&str], r: i64) -> Self {
        IntBox::new(vars.iter().map(|v| (*v, -r, r))).expect("valid cube")
    }

    pub fn vars(&self) -> Vec<&str> {
        self.vars.iter().map(String::as_str).collect()
    }

    pub fn dim(&self) -> usize {
        self.vars.len()
    }

    pub fn len(&self) -> u128 {
        self.lo
            .iter()
            .zip(&self.hi)
            .map(|(l, h)| (h - l + 1) as u128)
            .product()
    }

    pub fn is_empty(&self) -> bool {
        false
    }

    /// The `idx`-th point in lexicographic order.
    pub fn point_at(&self, mut idx: u64) -> Vec<i64> {
        let mut out = vec![0; self.dim()];
        for k in (0..self.dim()).rev() {
            let w = (self.hi[k] - self.lo[k] + 1) as u64;
            out[k] = self.lo[k] + (idx % w) as i64;
            idx /= w;
        }
        out
    }

    /// Steps `x` to its lexicographic successor; false once past the end.
    #[inline]
    fn advance(&self, x: &mut [i64]) -> bool {
        for k in (0..x.len()).rev() {
            if x[k] < self.hi[k] {
                x[k] += 1;
                return true;
            }
            x[k] = self.lo[k];
        }
        false
    }

    pub fn named(&self, x: &[i64]) -> BTreeMap<String, i64> {
        self.vars.iter().cloned().zip(x.iter().copied()).collect()
    }
}

/// Lexicographically first point at which `probe` returns `Some`.
///
/// `jobs` workers scan disjoint chunks; the answer is the same for any
/// `jobs >= 1`.
pub fn find_first<T, F>(bx: &IntBox, jobs: usize, probe: F) -> Option<(Vec<i64>, T)>
where
    T: Send,
    F: Fn(&[i64]) -> Option<T> + Sync,
{
    let n = u64::try_from(bx.len()).expect("box size fits in u64");
    let jobs = (jobs.max(1) as u64).min(n.max(1));
    let best = AtomicU64::new(u64::MAX);
    let scan = |start: u64, end: u64| -> Option<(u64, Vec<i64>, T)> {
        let mut x = bx.point_at(start);
        let mut idx = start;
        while idx < end {
            if idx & 0xfff == 0 && best.load(Ordering::Relaxed) < idx {
                return None;
            }
            if let Some(t) = probe(&x) {
                best.fetch_min(idx, Ordering::Relaxed);
                return Some((idx, x, t));
            }
            idx += 1;
            if !bx.advance(&mut x) {
                break;
            }
        }
        None
    };
    let bounds: Vec<(u64, u64)> = (0..jobs)
        .map(|j| (n * j / jobs, n * (j + 1) / jobs))
        .collect();
    let hits: Vec<(u64, Vec<i64>, T)> = if jobs == 1 {
        scan(0, n).into_iter().collect()
    } else {
        std::thread::scope(|s| {
            let handles: Vec<_> = bounds
                .iter()
                .map(|&(a, b)| s.spawn(move || scan(a, b)))
                .collect();
            handles
                .into_iter()
                .filter_map(|h| h.join().expect("worker panicked"))
                .collect()
        })
    };
    hits.into_iter()
        .min_by_key(|(idx, _, _)| *idx)
        .map(|(_, x, t)| (x, t))
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
#[serde(tag = "result", rename_all = "snake_case")]
pub enum BoxComparison {
    Equal {
        points: u64,
    },
    Counterexample {
        point: BTreeMap<String, i64>,
        left: i64,
        right: i64,
    },
}

impl BoxComparison {
    pub fn is_equal(&self) -> bool {
        matches!(self, BoxComparison::Equal { .. })
    }
}

/// Compares `f` and `g` at every point of `bx`. Refuses boxes with more
/// than `cap` points; any variable of `f` or `g` missing from the box is an
/// error.
pub fn pl_equal_on_box(
    f: &PLFunction,
    g: &PLFunction,
    bx: &IntBox,
    cap: u64,
    jobs: usize,
) -> Result<BoxComparison, TropicalError> {
    let points = bx.len();
    if points > cap as u128 {
        return Err(TropicalError::BoxTooLarge { points, cap });
    }
    let vars = bx.vars();
    let cf = f.compile(&vars)?;
    let cg = g.compile(&vars)?;
    let hit = find_first(bx, jobs, |x| {
        let (a, b) = (cf.eval(x), cg.eval(x));
        (a != b).then_some((a, b))
    });
    Ok(match hit {
        None => BoxComparison::Equal {
            points: points as u64,
        },
        Some((x, (left, right))) => BoxComparison::Counterexample {
            point: bx.named(&x),
            left,
            right,
        },
    })
}
