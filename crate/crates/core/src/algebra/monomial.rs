use std::cmp::Ordering;
use std::fmt;
use std::sync::OnceLock;

use super::MAX_VARS;

/// Exponent vector of a monomial in at most [`MAX_VARS`] variables.
///
/// Ordered graded-lexicographically with x_1 > x_2 > … > x_ℓ.
#[derive(Clone, Copy, PartialEq, Eq, Hash, Default)]
pub struct Monomial {
    exps: [u16; MAX_VARS],
}

impl Monomial {
    pub fn one() -> Self {
        Monomial::default()
    }

    pub fn var(i: usize) -> Self {
        let mut m = Monomial::default();
        m.exps[i] = 1;
        m
    }

    pub fn from_exponents(exps: &[u16]) -> Self {
        assert!(exps.len() <= MAX_VARS, "too many variables");
        let mut m = Monomial::default();
        m.exps[..exps.len()].copy_from_slice(exps);
        m
    }

    pub fn exponent(&self, i: usize) -> u16 {
        self.exps[i]
    }

    pub fn exponents(&self, nvars: usize) -> &[u16] {
        &self.exps[..nvars]
    }

    pub fn degree(&self) -> u32 {
        self.exps.iter().map(|&e| e as u32).sum()
    }

    pub fn mul(&self, other: &Monomial) -> Monomial {
        let mut m = *self;
        for (a, b) in m.exps.iter_mut().zip(other.exps) {
            *a += b;
        }
        m
    }

    /// `self / other` when `other` divides `self`.
    pub fn div(&self, other: &Monomial) -> Option<Monomial> {
        let mut m = *self;
        for (a, b) in m.exps.iter_mut().zip(other.exps) {
            *a = a.checked_sub(b)?;
        }
        Some(m)
    }

    pub fn with_exponent(&self, i: usize, e: u16) -> Monomial {
        let mut m = *self;
        m.exps[i] = e;
        m
    }

    /// Embed into a larger ring by shifting variables by `offset`.
    pub fn shifted(&self, offset: usize, nvars: usize) -> Monomial {
        let mut m = Monomial::default();
        m.exps[offset..offset + nvars].copy_from_slice(&self.exps[..nvars]);
        m
    }

    /// Drop variable `skip`, compacting the remaining exponents.
    pub fn without(&self, skip: usize, nvars: usize) -> Monomial {
        let mut m = Monomial::default();
        let mut k = 0;
        for i in 0..nvars {
            if i != skip {
                m.exps[k] = self.exps[i];
                k += 1;
            }
        }
        m
    }

    /// Inverse of [`Monomial::without`]: insert exponent `e` at position `at`.
    pub fn with_inserted(&self, at: usize, e: u16, nvars: usize) -> Monomial {
        let mut m = Monomial::default();
        let mut k = 0;
        for i in 0..nvars {
            if i == at {
                m.exps[i] = e;
            } else {
                m.exps[i] = self.exps[k];
                k += 1;
            }
        }
        m
    }
}

impl Ord for Monomial {
    fn cmp(&self, other: &Self) -> Ordering {
        self.degree()
            .cmp(&other.degree())
            .then_with(|| self.exps.cmp(&other.exps))
    }
}

impl PartialOrd for Monomial {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

impl fmt::Debug for Monomial {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let last = self.exps.iter().rposition(|&e| e != 0).map_or(0, |p| p + 1);
        write!(f, "{:?}", &self.exps[..last])
    }
}

const BINOM_N: usize = 1100;
const BINOM_K: usize = MAX_VARS + 2;

fn binom_table() -> &'static Vec<[u64; BINOM_K]> {
    static TABLE: OnceLock<Vec<[u64; BINOM_K]>> = OnceLock::new();
    TABLE.get_or_init(|| {
        let mut t = vec![[0u64; BINOM_K]; BINOM_N];
        for n in 0..BINOM_N {
            t[n][0] = 1;
            for k in 1..BINOM_K.min(n + 1) {
                t[n][k] = t[n - 1][k - 1].saturating_add(if k < n { t[n - 1][k] } else { 0 });
            }
        }
        t
    })
}

/// Binomial coefficient C(n, k) for general arguments (u128 intermediate).
pub fn binomial(n: u64, k: u64) -> u64 {
    if k > n {
        return 0;
    }
    if (n as usize) < BINOM_N && (k as usize) < BINOM_K {
        return binom_table()[n as usize][k as usize];
    }
    let k = k.min(n - k);
    let mut acc: u128 = 1;
    for i in 0..k {
        acc = acc * (n - i) as u128 / (i + 1) as u128;
    }
    u64::try_from(acc).unwrap_or(u64::MAX)
}

/// Number of monomials of degree `d` in `nvars` variables: C(d+ℓ−1, ℓ−1).
pub fn monomial_count(nvars: usize, d: i64) -> usize {
    if d < 0 {
        return 0;
    }
    if nvars == 0 {
        return usize::from(d == 0);
    }
    binomial(d as u64 + nvars as u64 - 1, nvars as u64 - 1) as usize
}

/// All degree-`d` monomials in `nvars` variables, in descending graded-lex order.
pub fn monomials_of_degree(nvars: usize, d: u32) -> Vec<Monomial> {
    let mut out = Vec::with_capacity(monomial_count(nvars, d as i64));
    if nvars == 0 {
        if d == 0 {
            out.push(Monomial::one());
        }
        return out;
    }
    let mut cur = [0u16; MAX_VARS];
    fn rec(i: usize, nvars: usize, rem: u32, cur: &mut [u16; MAX_VARS], out: &mut Vec<Monomial>) {
        if i == nvars - 1 {
            cur[i] = rem as u16;
            out.push(Monomial { exps: *cur });
            cur[i] = 0;
            return;
        }
        for e in (0..=rem).rev() {
            cur[i] = e as u16;
            rec(i + 1, nvars, rem - e, cur, out);
        }
        cur[i] = 0;
    }
    rec(0, nvars, d, &mut cur, &mut out);
    out
}

/// Position of `m` inside [`monomials_of_degree`] for its own degree.
pub fn monomial_rank(m: &Monomial, nvars: usize) -> usize {
    let mut rem = m.degree() as i64;
    let mut idx = 0usize;
    for i in 0..nvars.saturating_sub(1) {
        let e = m.exps[i] as i64;
        // monomials whose x_i exponent exceeds e
        idx += monomial_count(nvars - i, rem - e - 1);
        rem -= e;
    }
    idx
}
