//! Knebusch splitting-tower bookkeeping.
//!
//! A [`SplittingPattern`] records the dimensions of the successive anisotropic
//! kernels `q_0, q_1, ..., q_h`. The enumerator closes the tower under the
//! first-Witt-index constraint: from a kernel of dimension `d` the next step
//! removes `2v` with `v` in [`karpenko_admissible_i1`]`(d)`.

use std::fmt;

use rayon::prelude::*;
use serde::Serialize;

use crate::error::{Error, Result};
use crate::pow2;

/// The unique `s >= 0` with `2^s < dim_p <= 2^{s+1}`.
pub fn s_of_dim(dim_p: u64) -> Result<u32> {
    if dim_p < 2 {
        return Err(Error::TooSmall {
            what: "dim p",
            value: dim_p,
            min: 2,
        });
    }
    Ok(match dim_p.checked_next_power_of_two() {
        Some(top) => top.trailing_zeros() - 1,
        None => 63,
    })
}

/// Smallest `u` with `2^u >= v`.
#[inline]
pub(crate) fn ceil_log2(v: u64) -> u32 {
    if v <= 1 {
        0
    } else {
        64 - (v - 1).leading_zeros()
    }
}

/// Whether `v` can be the first higher Witt index of an anisotropic form of
/// dimension `d`: `1 <= v <= d/2` and `2^u | d - v` for the least `u` with
/// `2^u >= v`.
pub fn is_karpenko_admissible(d: u64, v: u64) -> bool {
    if v == 0 || v > d / 2 {
        return false;
    }
    let u = ceil_log2(v);
    (d - v) & (pow2(u) - 1) == 0
}

/// All admissible first Witt indices for dimension `d`, ascending.
///
/// Each dyadic window `(2^{u-1}, 2^u]` holds at most one admissible value,
/// namely the representative of `d mod 2^u` in that window.
pub fn karpenko_admissible_i1(d: u64) -> Vec<u64> {
    let cap = d / 2;
    let mut out = Vec::new();
    if cap >= 1 {
        out.push(1);
    }
    let mut u = 1u32;
    while u < 64 && pow2(u - 1) < cap {
        let modulus = pow2(u);
        let r = d & (modulus - 1);
        let v = if r == 0 { modulus } else { r };
        if v > modulus / 2 && v <= cap {
            out.push(v);
        }
        u += 1;
    }
    out
}

/// Decreasing kernel dimensions `[d_0, ..., d_h]` of a splitting tower.
#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize)]
pub struct SplittingPattern {
    dims: Vec<u64>,
    degree: u32,
}

impl SplittingPattern {
    pub fn new(dims: Vec<u64>) -> Result<Self> {
        let reject = |reason: &str| Error::InvalidPattern {
            dims: dims.clone(),
            reason: reason.to_string(),
        };
        if dims.len() < 2 {
            return Err(reject("need at least d_0 and a split kernel"));
        }
        if dims[0] < 2 {
            return Err(reject("d_0 must be at least 2"));
        }
        if dims.windows(2).any(|w| w[0] <= w[1]) {
            return Err(reject("dimensions must be strictly decreasing"));
        }
        let parity = dims[0] % 2;
        if dims.iter().any(|&d| d % 2 != parity) {
            return Err(reject("dimensions must share one parity"));
        }
        let h = dims.len() - 1;
        if dims[h] > 1 {
            return Err(reject("last kernel must have dimension 0 or 1"));
        }
        if dims[..h].iter().any(|&d| d <= 1) {
            return Err(reject("only the last kernel may be split"));
        }
        let degree = if parity == 1 {
            0
        } else {
            let penultimate = dims[h - 1];
            if !penultimate.is_power_of_two() {
                return Err(reject(
                    "penultimate kernel of an even pattern must have 2-power dimension",
                ));
            }
            penultimate.trailing_zeros()
        };
        Ok(SplittingPattern { dims, degree })
    }

    pub fn dims(&self) -> &[u64] {
        &self.dims
    }

    pub fn d0(&self) -> u64 {
        self.dims[0]
    }

    pub fn height(&self) -> usize {
        self.dims.len() - 1
    }

    /// `n` with `d_{h-1} = 2^n` for even patterns; `0` for odd ones.
    pub fn degree(&self) -> u32 {
        self.degree
    }

    pub fn is_even(&self) -> bool {
        self.dims[0].is_multiple_of(2)
    }

    /// `i_r` for `r = 1..=h`, stored 0-based.
    pub fn higher_witt(&self) -> Vec<u64> {
        self.dims.windows(2).map(|w| (w[0] - w[1]) / 2).collect()
    }

    /// `i_r`, 1-based.
    pub fn witt_index(&self, r: usize) -> u64 {
        (self.dims[r - 1] - self.dims[r]) / 2
    }

    /// `j_r = i_1 + ... + i_r` for `r = 0..=h`.
    pub fn cumulative(&self) -> Vec<u64> {
        self.dims.iter().map(|&d| (self.dims[0] - d) / 2).collect()
    }

    /// `d_0 = d_h + 2 sum i_r`, and for even patterns also
    /// `d_0 = 2^n + 2 sum_{r<h} i_r`.
    pub fn dimension_identity_holds(&self) -> bool {
        let i = self.higher_witt();
        let h = self.height();
        let all: u64 = i.iter().sum();
        if self.dims[0] != self.dims[h] + 2 * all {
            return false;
        }
        if self.is_even() {
            let head: u64 = i[..h - 1].iter().sum();
            return self.dims[0] == pow2(self.degree) + 2 * head;
        }
        true
    }
}

impl fmt::Display for SplittingPattern {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for (n, d) in self.dims.iter().enumerate() {
            if n > 0 {
                f.write_str(",")?;
            }
            write!(f, "{d}")?;
        }
        Ok(())
    }
}

/// Opt-in filters for [`enumerate_patterns`].
#[derive(Debug, Clone, Copy, Default, PartialEq, Eq, Serialize)]
pub struct PatternFilters {
    /// Keep even patterns only if [`vishik_height_bound_filter`] passes.
    pub vishik_height_bound: bool,
    /// Keep patterns whose non-final higher Witt indices are divisible by `2^m`.
    pub pfister_divisibility: Option<u32>,
}

/// Even patterns of degree `n` and height at least two have
/// `d_0 >= 2^n + 2^{n-1}`.
pub fn vishik_height_bound_filter(pat: &SplittingPattern) -> Result<bool> {
    if !pat.is_even() {
        return Err(Error::OddPattern { d0: pat.d0() });
    }
    Ok(vishik_holds(pat.dims(), pat.degree()))
}

fn vishik_holds(dims: &[u64], degree: u32) -> bool {
    dims.len() == 2 || dims[0] >= pow2(degree) + pow2(degree) / 2
}

/// `2^m | i_r` for every `1 <= r < h`.
pub fn pfister_divisibility_filter(pat: &SplittingPattern, m: u32) -> bool {
    let i = pat.higher_witt();
    let modulus = pow2(m);
    i[..i.len() - 1].iter().all(|&v| v % modulus == 0)
}

/// `dim_q <= 2^s` for the `s` of `dim_p`: Hoffmann's separation theorem then
/// keeps `q` anisotropic over `F(p)`, forcing `k = dim_q`.
pub fn hoffmann_anisotropy_forced(dim_p: u64, dim_q: u64) -> Result<bool> {
    let s = s_of_dim(dim_p)?;
    if dim_q < 2 {
        return Err(Error::TooSmall {
            what: "dim q",
            value: dim_q,
            min: 2,
        });
    }
    Ok(dim_q <= pow2(s))
}

/// Walks every admissible chain from `d`, calling `visit` on each complete
/// pattern's dimension list. Larger steps come first.
pub fn visit_patterns<F>(d: u64, filters: &PatternFilters, mut visit: F)
where
    F: FnMut(&[u64]),
{
    if d < 2 {
        return;
    }
    let mut dims = vec![d];
    walk(&mut dims, filters, &mut visit);
}

fn walk<F: FnMut(&[u64])>(dims: &mut Vec<u64>, filters: &PatternFilters, visit: &mut F) {
    let cur = *dims.last().expect("chain is never empty");
    if cur <= 1 {
        if cur == 0 && filters.vishik_height_bound {
            let degree = dims[dims.len() - 2].trailing_zeros();
            if !vishik_holds(dims, degree) {
                return;
            }
        }
        visit(dims);
        return;
    }
    for v in karpenko_admissible_i1(cur).into_iter().rev() {
        if let Some(next) = admissible_step(cur, v, filters) {
            dims.push(next);
            walk(dims, filters, visit);
            dims.pop();
        }
    }
}

fn admissible_step(cur: u64, v: u64, filters: &PatternFilters) -> Option<u64> {
    let next = cur - 2 * v;
    // an even height-one tail is a Pfister form
    if next == 0 && !cur.is_power_of_two() {
        return None;
    }
    if let Some(m) = filters.pfister_divisibility {
        if next > 1 && !v.is_multiple_of(pow2(m)) {
            return None;
        }
    }
    Some(next)
}

/// Every splitting pattern starting at `d` reachable through admissible first
/// Witt indices, with the requested filters applied. Output order is
/// deterministic: at each step larger `i_r` come first.
pub fn enumerate_patterns(d: u64, filters: &PatternFilters) -> Vec<SplittingPattern> {
    if d < 2 {
        return Vec::new();
    }
    let firsts: Vec<u64> = karpenko_admissible_i1(d)
        .into_iter()
        .rev()
        .filter_map(|v| admissible_step(d, v, filters))
        .collect();
    let branches: Vec<Vec<SplittingPattern>> = firsts
        .into_par_iter()
        .map(|next| {
            let mut out = Vec::new();
            let mut dims = vec![d, next];
            walk(&mut dims, filters, &mut |chain: &[u64]| {
                out.push(
                    SplittingPattern::new(chain.to_vec()).expect("enumerated chains are valid"),
                );
            });
            out
        })
        .collect();
    branches.into_iter().flatten().collect()
}
