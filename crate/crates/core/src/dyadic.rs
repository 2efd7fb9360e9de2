//! 2-adic expansions and the index arithmetic built on them.

use std::collections::BTreeSet;
use std::fmt;

use num_bigint::BigUint;
use serde::Serialize;

use crate::error::{Error, Result};

/// Parity of a binomial coefficient.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum Parity {
    Even,
    Odd,
}

impl Parity {
    pub fn is_odd(self) -> bool {
        self == Parity::Odd
    }

    pub fn is_even(self) -> bool {
        self == Parity::Even
    }
}

impl From<bool> for Parity {
    /// `true` maps to [`Parity::Odd`].
    fn from(odd: bool) -> Self {
        if odd {
            Parity::Odd
        } else {
            Parity::Even
        }
    }
}

impl fmt::Display for Parity {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Parity::Even => "even",
            Parity::Odd => "odd",
        })
    }
}

/// A non-negative integer together with its binary support.
///
/// The support is the set of bit positions carrying a one, so
/// `value = sum(2^i for i in support)`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Dyadic {
    value: BigUint,
    support: BTreeSet<u64>,
}

impl Dyadic {
    pub fn new(value: BigUint) -> Self {
        let support = (0..value.bits()).filter(|&i| value.bit(i)).collect();
        Dyadic { value, support }
    }

    pub fn value(&self) -> &BigUint {
        &self.value
    }

    pub fn support(&self) -> &BTreeSet<u64> {
        &self.support
    }

    /// Lucas parity of `C(self, lower)`.
    pub fn binom_parity(&self, lower: &Dyadic) -> Parity {
        Parity::from(lower.support.is_subset(&self.support))
    }
}

impl From<u64> for Dyadic {
    fn from(value: u64) -> Self {
        Dyadic::new(BigUint::from(value))
    }
}

/// Bit positions of the ones in `x`.
pub fn support(x: u64) -> BTreeSet<u32> {
    let mut out = BTreeSet::new();
    let mut rest = x;
    while rest != 0 {
        out.insert(rest.trailing_zeros());
        rest &= rest - 1;
    }
    out
}

/// Parity of `C(x, y)` by Lucas' criterion: odd iff the support of `y` sits
/// inside the support of `x`. Returns even for `y > x`, where `C(x, y) = 0`.
#[inline]
pub fn binom_parity(x: u64, y: u64) -> Parity {
    Parity::from(binom_is_odd(x, y))
}

#[inline]
pub(crate) fn binom_is_odd(x: u64, y: u64) -> bool {
    y & !x == 0
}

/// Largest exponent accepted in an [`AltDecomp`].
pub const MAX_EXPONENT: u32 = 64;

/// Exponents `r_1 > r_2 > ... > r_t >= 0` of an alternating 2-power sum
/// `2^{r_1} - 2^{r_2} + ... + (-1)^{t-1} 2^{r_t}`, with the last gap at
/// least two. Every positive integer has exactly one such decomposition.
#[derive(Debug, Clone, PartialEq, Eq, Hash, Serialize)]
#[serde(transparent)]
pub struct AltDecomp {
    exponents: Vec<u32>,
}

impl AltDecomp {
    pub fn new(exponents: Vec<u32>) -> Result<Self> {
        let reject = |reason| Error::InvalidDecomposition {
            exponents: exponents.clone(),
            reason,
        };
        if exponents.is_empty() {
            return Err(reject("empty exponent list"));
        }
        if exponents[0] > MAX_EXPONENT {
            return Err(Error::Overflow(exponents[0]));
        }
        if exponents.windows(2).any(|w| w[0] <= w[1]) {
            return Err(reject("exponents must be strictly decreasing"));
        }
        let t = exponents.len();
        if t >= 2 && exponents[t - 2] < exponents[t - 1] + 2 {
            return Err(reject("last gap must be at least two"));
        }
        Ok(AltDecomp { exponents })
    }

    pub fn exponents(&self) -> &[u32] {
        &self.exponents
    }

    pub fn len(&self) -> usize {
        self.exponents.len()
    }

    pub fn is_empty(&self) -> bool {
        false
    }

    /// The alternating sum, exact.
    pub fn value(&self) -> u128 {
        alt_sum(&self.exponents)
    }
}

fn alt_sum(exponents: &[u32]) -> u128 {
    // Partial sums of a strictly decreasing alternating series stay positive,
    // so unsigned arithmetic never underflows.
    let mut acc: u128 = 0;
    for (i, &r) in exponents.iter().enumerate() {
        if i % 2 == 0 {
            acc += 1u128 << r;
        } else {
            acc -= 1u128 << r;
        }
    }
    acc
}

/// Alternating decomposition of `n >= 1` read off the runs of ones in its
/// binary expansion: a run occupying bits `lo..hi` contributes
/// `2^hi - 2^lo`, except that a lowest run of length one contributes `2^lo`.
///
/// # Panics
/// If `n == 0`.
pub fn alt_decompose(n: u64) -> AltDecomp {
    assert!(n >= 1, "alternating decomposition needs n >= 1");
    let mut runs = Vec::new();
    let mut rest = n;
    let mut offset = 0u32;
    while rest != 0 {
        let skip = rest.trailing_zeros();
        rest >>= skip;
        offset += skip;
        let len = rest.trailing_ones();
        runs.push((offset, offset + len));
        rest = rest.checked_shr(len).unwrap_or(0);
        offset += len;
    }
    let mut exponents = Vec::with_capacity(2 * runs.len());
    let (lowest, upper) = runs.split_first().expect("n >= 1 has a run");
    for &(lo, hi) in upper.iter().rev() {
        exponents.push(hi);
        exponents.push(lo);
    }
    let (lo, hi) = *lowest;
    if hi - lo >= 2 {
        exponents.push(hi);
        exponents.push(lo);
    } else {
        exponents.push(lo);
    }
    AltDecomp { exponents }
}

/// Validates `exponents` and returns the alternating sum.
pub fn alt_recompose(exponents: &[u32]) -> Result<u64> {
    let decomp = AltDecomp::new(exponents.to_vec())?;
    u64::try_from(decomp.value()).map_err(|_| Error::Overflow(exponents[0]))
}

/// Tate-motive positions forced into the upper motive by excellent
/// connections, one per term of the decomposition.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct MotivePositions {
    pub decomp: AltDecomp,
    pub positions: Vec<u64>,
}

/// `D_c = sum_{i<c} (-1)^{i-1} 2^{r_i - 1} + eps(c) * sum_{j>=c} (-1)^{j-1} 2^{r_j}`
/// with `eps(c) = 1` for even `c` and `0` for odd `c` (1-based `c`).
///
/// The tail sum starts at `j = c`, which gives `D_1 = 0`.
pub fn d_positions(decomp: &AltDecomp) -> MotivePositions {
    let r = decomp.exponents();
    let t = r.len();
    let sign = |i: usize| if i.is_multiple_of(2) { 1i128 } else { -1i128 };
    let positions = (0..t)
        .map(|c0| {
            // c0 is the 0-based index, so c = c0 + 1
            let head: i128 = (0..c0).map(|i| sign(i) * (1i128 << (r[i] - 1))).sum();
            let tail: i128 = if (c0 + 1) % 2 == 0 {
                (c0..t).map(|j| sign(j) * (1i128 << r[j])).sum()
            } else {
                0
            };
            u64::try_from(head + tail).expect("0 <= D_c < n")
        })
        .collect();
    MotivePositions {
        decomp: decomp.clone(),
        positions,
    }
}

/// `Lambda(n) = {i : 0 <= i <= n/2} ∪ {n - i : 0 <= i <= n/2}`, the index
/// set of Tate motives of a smooth projective quadric of dimension `n`.
pub fn lambda_set(n: u64) -> BTreeSet<u64> {
    let half = n / 2;
    (0..=half).flat_map(|i| [i, n - i]).collect()
}
