//! Parity bookkeeping for Steenrod operations on the classes `l_r` of a
//! projective quadric.
//!
//! `S^j(l_r) = C(dim q - r - 1, j) l_{r-j}`, so rationality questions reduce
//! to binomial parities. Vishik's descent theorem is taken as an axiom: it
//! supplies the range of `j` for which `S^j(l_r)` is rational once `l_r` is
//! rational over `F(p)`. Negative `j` can appear at the bottom of that
//! range; `S^j` vanishes there, and the matching binomials are zero.

use serde::Serialize;

use crate::conjecture::range_top;
use crate::dyadic::{binom_is_odd, binom_parity, Parity};
use crate::error::{Error, Result};
use crate::pow2;
use crate::tower::s_of_dim;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
pub struct SteenrodQuery {
    dim_q: u64,
    r: u64,
    j: u64,
}

impl SteenrodQuery {
    pub fn new(dim_q: u64, r: u64, j: u64) -> Result<Self> {
        if dim_q < 2 {
            return Err(Error::InvalidQuery(format!("dim q = {dim_q} is below 2")));
        }
        let dim_quadric = dim_q - 2;
        if r > dim_quadric / 2 {
            return Err(Error::InvalidQuery(format!(
                "cycle index r = {r} exceeds dim Q / 2 = {}",
                dim_quadric / 2
            )));
        }
        Ok(SteenrodQuery { dim_q, r, j })
    }

    pub fn dim_q(&self) -> u64 {
        self.dim_q
    }

    pub fn r(&self) -> u64 {
        self.r
    }

    pub fn j(&self) -> u64 {
        self.j
    }
}

/// Parity of the coefficient `C(dim q - r - 1, j)` of `S^j(l_r)`.
pub fn steenrod_coeff_parity(query: &SteenrodQuery) -> Parity {
    binom_parity(query.dim_q - query.r - 1, query.j)
}

/// Inclusive integer interval; empty when `lo > hi`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
pub struct IntRange {
    pub lo: i64,
    pub hi: i64,
}

impl IntRange {
    pub fn is_empty(&self) -> bool {
        self.lo > self.hi
    }

    pub fn len(&self) -> u64 {
        if self.is_empty() {
            0
        } else {
            (self.hi - self.lo + 1) as u64
        }
    }

    pub fn iter(&self) -> std::ops::RangeInclusive<i64> {
        self.lo..=self.hi
    }

    pub fn contains(&self, x: i64) -> bool {
        self.lo <= x && x <= self.hi
    }
}

fn validate(dim_q: u64, dim_p: u64, witt_index: u64) -> Result<()> {
    s_of_dim(dim_p)?;
    if dim_q < 2 {
        return Err(Error::TooSmall {
            what: "dim q",
            value: dim_q,
            min: 2,
        });
    }
    if witt_index < 1 {
        return Err(Error::TooSmall {
            what: "Witt index",
            value: witt_index,
            min: 1,
        });
    }
    if 2 * witt_index > dim_q {
        return Err(Error::WittIndexOutOfRange {
            dim_q,
            witt: witt_index,
        });
    }
    Ok(())
}

/// `[(dim p - 1)/2]`.
fn half_p(dim_p: u64) -> i64 {
    ((dim_p - 1) / 2) as i64
}

/// `{ j : dim Q - r - [(dim p - 1)/2] < j <= r }` with `r = i_W - 1`, the
/// lower end included when `p` stays non-split over `F(q)`.
pub fn rational_j_range(
    dim_q: u64,
    dim_p: u64,
    witt_index: u64,
    p_splits_over_fq: bool,
) -> Result<IntRange> {
    validate(dim_q, dim_p, witt_index)?;
    let r = witt_index as i64 - 1;
    let dim_quadric = dim_q as i64 - 2;
    let bottom = dim_quadric - r - half_p(dim_p);
    let lo = if p_splits_over_fq { bottom + 1 } else { bottom };
    Ok(IntRange { lo, hi: r })
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
pub struct EvennessEntry {
    pub j: i64,
    pub l: i64,
    pub parity: Parity,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct EvennessReport {
    pub k: u64,
    pub r: u64,
    /// `dim q - r - 1`, which equals `(dim q + k)/2`.
    pub top: u64,
    pub identity_holds: bool,
    pub j_range: IntRange,
    /// `k < l <= [(dim p - 1)/2]`, one further when `p` is not split.
    pub l_range: IntRange,
    pub entries: Vec<EvennessEntry>,
    /// Every `C(top, l)` in the range is even. When false, no pair of forms
    /// realizes these invariants.
    pub all_even: bool,
}

/// Rationality of `S^j(l_r)` forces `C((dim q + k)/2, l)` to be even for
/// `l = top - j` over the rational range.
pub fn corollary_4_7_evenness(
    dim_q: u64,
    dim_p: u64,
    witt_index: u64,
    p_splits_over_fq: bool,
) -> Result<EvennessReport> {
    let j_range = rational_j_range(dim_q, dim_p, witt_index, p_splits_over_fq)?;
    let k = dim_q - 2 * witt_index;
    let r = witt_index - 1;
    let top = dim_q - r - 1;
    let identity_holds = 2 * top == dim_q + k;
    let extra = i64::from(!p_splits_over_fq);
    let l_range = IntRange {
        lo: k as i64 + 1,
        hi: half_p(dim_p) + extra,
    };
    let entries: Vec<EvennessEntry> = j_range
        .iter()
        .rev()
        .map(|j| {
            let l = top as i64 - j;
            let odd = l >= 0 && binom_is_odd(top, l as u64);
            EvennessEntry {
                j,
                l,
                parity: Parity::from(odd),
            }
        })
        .collect();
    let all_even = entries.iter().all(|e| e.parity.is_even());
    Ok(EvennessReport {
        k,
        r,
        top,
        identity_holds,
        j_range,
        l_range,
        entries,
        all_even,
    })
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum ProofCase {
    /// `k < 2^{s-1}`.
    SmallK,
    /// `2^{s+1} - 2 <= dim p <= 2^{s+1}`.
    LargeP,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
pub struct CoverageGap {
    pub case: ProofCase,
    pub s: u32,
    pub dim_p: u64,
    pub k: u64,
    pub m: i64,
    pub delivered_top: i64,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct Rederivation {
    pub s_max: u32,
    pub checked_case1: u64,
    pub checked_case2: u64,
    pub failures: Vec<CoverageGap>,
    /// Case-2 cells whose coverage relied on the non-split boundary;
    /// `(s, dim p, k)`.
    pub boundary_needed: Vec<(u32, u64, u64)>,
    /// Per `s`, the least `dim p` from which the split range alone covers
    /// `(k, m]` for every `k < 2^s` and every larger `dim p`.
    pub split_coverage_from: Vec<(u32, u64)>,
}

/// Replays the range arithmetic behind the two Steenrod-based cases: the
/// evenness range `(k, [(dim p - 1)/2]]` (one further at the non-split
/// boundary `dim p = 2^{s+1} - 2`) must reach the top `m` of the binomial
/// criterion.
pub fn theorem_4_8_rederive(s_max: u32) -> Rederivation {
    let mut out = Rederivation {
        s_max,
        checked_case1: 0,
        checked_case2: 0,
        failures: Vec::new(),
        boundary_needed: Vec::new(),
        split_coverage_from: Vec::new(),
    };
    for s in 0..=s_max {
        let upper = pow2(s + 1);
        let mut first_covered = upper;
        for dim_p in (pow2(s) + 1..=upper).rev() {
            let split_top = half_p(dim_p);
            if (0..pow2(s)).all(|k| split_top >= range_top(k, s)) {
                first_covered = dim_p;
            } else {
                break;
            }
        }
        out.split_coverage_from.push((s, first_covered));

        for dim_p in pow2(s) + 1..=upper {
            for k in 0..pow2(s) {
                let m = range_top(k, s);
                if 2 * k < pow2(s) {
                    out.checked_case1 += 1;
                    let top = half_p(dim_p);
                    if top < m {
                        out.failures.push(CoverageGap {
                            case: ProofCase::SmallK,
                            s,
                            dim_p,
                            k,
                            m,
                            delivered_top: top,
                        });
                    }
                }
                if dim_p + 2 >= upper {
                    out.checked_case2 += 1;
                    let boundary = dim_p + 2 == upper;
                    let top = half_p(dim_p) + i64::from(boundary);
                    if top < m {
                        out.failures.push(CoverageGap {
                            case: ProofCase::LargeP,
                            s,
                            dim_p,
                            k,
                            m,
                            delivered_top: top,
                        });
                    } else if boundary && half_p(dim_p) < m {
                        out.boundary_needed.push((s, dim_p, k));
                    }
                }
            }
        }
    }
    out
}
