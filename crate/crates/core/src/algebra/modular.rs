//! Modular elimination and lifting of exact nullspaces.
//!
//! A linear system over Q(ζ_n) is reduced modulo primes p ≡ 1 (mod n) under
//! every embedding ζ ↦ ω^j. The images are recombined into power-basis
//! coordinates, lifted by the Chinese remainder theorem and rational
//! reconstruction, and the candidates are finally checked exactly by the
//! caller.

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Signed, Zero};
use rayon::prelude::*;

use super::cyclo::{CycloField, CycloScalar};
use super::field::{FieldOps, ModField};
use super::matrix::gauss_jordan;
use super::Rational;
use crate::error::{Error, Result};

/// Primes are taken below this bound so products fit comfortably in u64.
pub const PRIME_BOUND: u32 = 1 << 27;

/// Largest number of primes tried before giving up on a lift.
pub const MAX_PRIMES: usize = 64;

/// Products added to a u64 accumulator between reductions.
const ACC_LIMIT: u32 = 1000;

pub fn mul_mod(a: u32, b: u32, p: u32) -> u32 {
    ((a as u64 * b as u64) % p as u64) as u32
}

pub fn pow_mod(mut a: u64, mut e: u64, m: u64) -> u64 {
    let mut r = 1 % m;
    a %= m;
    while e > 0 {
        if e & 1 == 1 {
            r = (r as u128 * a as u128 % m as u128) as u64;
        }
        a = (a as u128 * a as u128 % m as u128) as u64;
        e >>= 1;
    }
    r
}

/// Inverse of `a` modulo `m`; `a` must be a unit.
pub fn inv_mod(a: u64, m: u64) -> u64 {
    let (mut r0, mut r1) = (m as i128, (a % m) as i128);
    let (mut s0, mut s1) = (0i128, 1i128);
    while r1 != 0 {
        let q = r0 / r1;
        (r0, r1) = (r1, r0 - q * r1);
        (s0, s1) = (s1, s0 - q * s1);
    }
    assert_eq!(r0, 1, "not invertible");
    s0.rem_euclid(m as i128) as u64
}

/// Deterministic Miller-Rabin for 32-bit inputs.
pub fn is_prime(n: u32) -> bool {
    if n < 2 {
        return false;
    }
    for q in [2u32, 3, 5, 7, 11, 13, 61] {
        if n % q == 0 {
            return n == q;
        }
    }
    let n64 = n as u64;
    let mut d = n64 - 1;
    let mut s = 0;
    while d % 2 == 0 {
        d /= 2;
        s += 1;
    }
    'witness: for a in [2u64, 7, 61] {
        let mut x = pow_mod(a, d, n64);
        if x == 1 || x == n64 - 1 {
            continue;
        }
        for _ in 1..s {
            x = x * x % n64;
            if x == n64 - 1 {
                continue 'witness;
            }
        }
        return false;
    }
    true
}

fn prime_factors(mut n: u32) -> Vec<u32> {
    let mut out = Vec::new();
    let mut q = 2;
    while q * q <= n {
        if n % q == 0 {
            out.push(q);
            while n % q == 0 {
                n /= q;
            }
        }
        q += 1;
    }
    if n > 1 {
        out.push(n);
    }
    out
}

/// Primes p ≡ 1 (mod n) below [`PRIME_BOUND`], in decreasing order.
pub fn primes_for_conductor(n: u32) -> impl Iterator<Item = u32> {
    let n = n.max(2);
    let mut k = (PRIME_BOUND - 2) / n;
    std::iter::from_fn(move || {
        while k > 0 {
            let p = k * n + 1;
            k -= 1;
            if is_prime(p) {
                return Some(p);
            }
        }
        None
    })
}

/// A primitive n-th root of unity modulo p (requires n | p − 1).
pub fn root_of_unity(n: u32, p: u32) -> u32 {
    assert_eq!((p - 1) % n, 0, "p must be 1 mod n");
    let factors = prime_factors(n);
    for a in 2..p as u64 {
        let w = pow_mod(a, ((p - 1) / n) as u64, p as u64);
        if factors.iter().all(|&q| pow_mod(w, (n / q) as u64, p as u64) != 1) {
            return w as u32;
        }
    }
    1
}

/// The φ(n) embeddings Q(ζ_n) → F_p, as the images ω^j of ζ for the units j.
pub fn embeddings(field: &CycloField, p: u32) -> Vec<ModField> {
    let n = field.conductor();
    let omega = root_of_unity(n, p) as u64;
    (1..=n)
        .filter(|j| j.gcd(&n) == 1)
        .map(|j| ModField::new(p, field, pow_mod(omega, j as u64, p as u64) as u32))
        .collect()
}

/// A linear system whose rows are produced in batches over any field.
pub trait RowSource: Sync {
    fn ncols(&self) -> usize;
    fn nbatches(&self) -> usize;
    /// Rows of batch `b`, or `None` when a coefficient has no image in `f`.
    fn batch<F: FieldOps>(&self, f: &F, b: usize) -> Option<Vec<Vec<F::Elem>>>;
}

struct EchRow {
    pivot: usize,
    vals: Vec<u32>,
}

/// Incrementally maintained reduced row-echelon form over F_p.
///
/// Each stored row keeps only its entries in the current free (non-pivot)
/// columns; its pivot entry is 1 and its entries in other pivot columns are 0.
pub struct ModEchelon {
    p: u32,
    ncols: usize,
    free: Vec<usize>,
    rows: Vec<EchRow>,
}

fn reduce_acc(acc: &mut [u64], p: u64) {
    for a in acc.iter_mut() {
        *a %= p;
    }
}

impl ModEchelon {
    pub fn new(p: u32, ncols: usize) -> ModEchelon {
        ModEchelon {
            p,
            ncols,
            free: (0..ncols).collect(),
            rows: Vec::new(),
        }
    }

    pub fn rank(&self) -> usize {
        self.rows.len()
    }

    pub fn nullity(&self) -> usize {
        self.free.len()
    }

    pub fn is_full(&self) -> bool {
        self.free.is_empty()
    }

    /// Sorted pivot columns.
    pub fn pivots(&self) -> Vec<usize> {
        let mut p: Vec<usize> = self.rows.iter().map(|r| r.pivot).collect();
        p.sort_unstable();
        p
    }

    /// Add a batch of dense rows (entries reduced mod p). Returns the number
    /// of new pivots.
    pub fn add_rows(&mut self, batch: &[Vec<u32>]) -> usize {
        if self.free.is_empty() || batch.is_empty() {
            return 0;
        }
        let p = self.p;
        let p64 = p as u64;
        let nfree = self.free.len();

        // reduce against the stored rows; their coefficients are the original entries
        let old = &self.rows;
        let free = &self.free;
        let reduced: Vec<Vec<u32>> = batch
            .par_iter()
            .map(|v| {
                let mut acc: Vec<u64> = free.iter().map(|&c| v[c] as u64).collect();
                let mut pending = 0;
                for r in old {
                    let c = v[r.pivot];
                    if c == 0 {
                        continue;
                    }
                    let m = (p - c) as u64;
                    for (a, &x) in acc.iter_mut().zip(&r.vals) {
                        *a += m * x as u64;
                    }
                    pending += 1;
                    if pending == ACC_LIMIT {
                        reduce_acc(&mut acc, p64);
                        pending = 0;
                    }
                }
                acc.into_iter().map(|a| (a % p64) as u32).collect()
            })
            .collect();

        // incremental reduction inside the batch
        let mut fresh: Vec<EchRow> = Vec::new();
        for mut w in reduced {
            let mut acc: Vec<u64> = w.iter().map(|&x| x as u64).collect();
            let mut pending = 0;
            for q in &fresh {
                let c = w[q.pivot];
                if c == 0 {
                    continue;
                }
                let m = (p - c) as u64;
                for (a, &x) in acc.iter_mut().zip(&q.vals) {
                    *a += m * x as u64;
                }
                pending += 1;
                if pending == ACC_LIMIT {
                    reduce_acc(&mut acc, p64);
                    pending = 0;
                }
            }
            for (x, a) in w.iter_mut().zip(acc) {
                *x = (a % p64) as u32;
            }
            let Some(j) = w.iter().position(|&x| x != 0) else { continue };
            let inv = inv_mod(w[j] as u64, p64) as u32;
            for x in w.iter_mut() {
                if *x != 0 {
                    *x = mul_mod(*x, inv, p);
                }
            }
            for q in fresh.iter_mut() {
                let c = q.vals[j];
                if c == 0 {
                    continue;
                }
                let m = p - c;
                for (a, &x) in q.vals.iter_mut().zip(&w) {
                    if x != 0 {
                        *a = ((*a as u64 + m as u64 * x as u64) % p64) as u32;
                    }
                }
            }
            fresh.push(EchRow { pivot: j, vals: w });
        }
        if fresh.is_empty() {
            return 0;
        }

        // eliminate the new pivots from the stored rows
        let new_pos: Vec<usize> = fresh.iter().map(|q| q.pivot).collect();
        self.rows.par_iter_mut().for_each(|r| {
            let mults: Vec<(usize, u64)> = fresh
                .iter()
                .enumerate()
                .filter(|(_, q)| r.vals[q.pivot] != 0)
                .map(|(i, q)| (i, (p - r.vals[q.pivot]) as u64))
                .collect();
            if mults.is_empty() {
                return;
            }
            let mut acc: Vec<u64> = r.vals.iter().map(|&x| x as u64).collect();
            let mut pending = 0;
            for (i, m) in mults {
                for (a, &x) in acc.iter_mut().zip(&fresh[i].vals) {
                    *a += m * x as u64;
                }
                pending += 1;
                if pending == ACC_LIMIT {
                    reduce_acc(&mut acc, p64);
                    pending = 0;
                }
            }
            for (x, a) in r.vals.iter_mut().zip(acc) {
                *x = (a % p64) as u32;
            }
        });

        // compact the free columns
        let mut keep = vec![true; nfree];
        for &j in &new_pos {
            keep[j] = false;
        }
        let compact = |vals: &mut Vec<u32>| {
            let mut k = 0;
            for j in 0..nfree {
                if keep[j] {
                    vals[k] = vals[j];
                    k += 1;
                }
            }
            vals.truncate(k);
        };
        self.rows.par_iter_mut().for_each(|r| compact(&mut r.vals));
        let added = fresh.len();
        for mut q in fresh {
            q.pivot = self.free[q.pivot];
            compact(&mut q.vals);
            self.rows.push(q);
        }
        let mut k = 0;
        for j in 0..nfree {
            if keep[j] {
                self.free[k] = self.free[j];
                k += 1;
            }
        }
        self.free.truncate(k);
        added
    }

    /// Nullspace basis: one vector per free column, 1 in that column.
    pub fn nullspace(&self) -> Vec<Vec<u32>> {
        let p = self.p;
        self.free
            .iter()
            .enumerate()
            .map(|(j, &f)| {
                let mut v = vec![0u32; self.ncols];
                v[f] = 1;
                for r in &self.rows {
                    let x = r.vals[j];
                    v[r.pivot] = if x == 0 { 0 } else { p - x };
                }
                v
            })
            .collect()
    }
}

/// Eliminate all batches of `src` over `f`; `None` on bad reduction.
pub fn eliminate_mod<S: RowSource>(src: &S, f: &ModField) -> Option<ModEchelon> {
    let mut ech = ModEchelon::new(f.prime(), src.ncols());
    for b in 0..src.nbatches() {
        if ech.is_full() {
            break;
        }
        let rows = src.batch(f, b)?;
        ech.add_rows(&rows);
    }
    Some(ech)
}

/// Rank of the system modulo the first prime of good reduction; a lower
/// bound for the exact rank.
pub fn modular_rank<S: RowSource>(src: &S, field: &'static CycloField) -> Result<usize> {
    for p in primes_for_conductor(field.conductor()).take(MAX_PRIMES) {
        let emb = &embeddings(field, p)[0];
        if let Some(e) = eliminate_mod(src, emb) {
            return Ok(e.rank());
        }
    }
    Err(Error::Reconstruction("no prime of good reduction".into()))
}

/// Exact elimination over the field itself.
pub fn exact_nullspace<S: RowSource>(src: &S, field: &'static CycloField) -> Vec<Vec<CycloScalar>> {
    let n = src.ncols();
    let mut rows = Vec::new();
    for b in 0..src.nbatches() {
        rows.extend(src.batch(&field, b).expect("exact field has every image"));
    }
    let (pivots, _) = gauss_jordan(&field, &mut rows, n);
    super::matrix::nullspace_from_rref(&field, &rows, &pivots, n)
}

/// Rational reconstruction of `a` mod `m` with numerator and denominator
/// bounded by sqrt(m/2).
pub fn rational_reconstruct(a: &BigInt, m: &BigInt) -> Option<Rational> {
    let bound = (m / 2u32).sqrt();
    let (mut r0, mut r1) = (m.clone(), a.mod_floor(m));
    let (mut s0, mut s1) = (BigInt::zero(), BigInt::one());
    while r1 > bound {
        let q = &r0 / &r1;
        let r2 = &r0 - &q * &r1;
        let s2 = &s0 - &q * &s1;
        r0 = std::mem::replace(&mut r1, r2);
        s0 = std::mem::replace(&mut s1, s2);
    }
    if s1.is_zero() || s1.abs() > bound || !r1.gcd(&s1).is_one() {
        return None;
    }
    Some(Rational::new(r1, s1))
}

struct Lift {
    key: (usize, Vec<usize>),
    /// residues[v][c * φ + k]: power-basis coefficient k of entry c of vector v
    residues: Vec<Vec<BigInt>>,
    modulus: BigInt,
}

/// Candidates for an exact nullspace basis obtained by multi-modular lifting.
///
/// Every candidate set is handed to `verify`; the first accepted set is
/// returned together with the modular nullity, which bounds the true
/// nullity from above. Accepted vectors carry 1 in distinct free columns and
/// are therefore independent, so a set whose size equals the bound is an
/// exact basis.
pub fn lift_nullspace<S, V>(src: &S, field: &'static CycloField, verify: V) -> Result<Vec<Vec<CycloScalar>>>
where
    S: RowSource,
    V: Fn(&[Vec<CycloScalar>]) -> bool,
{
    let phi = field.degree();
    let ncols = src.ncols();
    let mut state: Option<Lift> = None;
    for p in primes_for_conductor(field.conductor()).take(MAX_PRIMES) {
        let embs = embeddings(field, p);
        let mut images = Vec::with_capacity(phi);
        let mut key = None;
        let mut consistent = true;
        for f in &embs {
            let Some(e) = eliminate_mod(src, f) else {
                consistent = false;
                break;
            };
            let k = (e.rank(), e.pivots());
            if key.as_ref().is_some_and(|k0| *k0 != k) {
                consistent = false;
                break;
            }
            key = Some(k);
            images.push(e.nullspace());
        }
        if !consistent {
            log::debug!("prime {p}: embeddings disagree or bad reduction");
            continue;
        }
        let key = key.expect("at least one embedding");
        if key.1.len() == ncols {
            return Ok(Vec::new());
        }
        match &state {
            Some(s) if s.key.0 > key.0 || (s.key.0 == key.0 && s.key.1 < key.1) => {
                log::debug!("prime {p}: worse pivots, skipped");
                continue;
            }
            Some(s) if s.key == key => {}
            _ => {
                state = Some(Lift {
                    key: key.clone(),
                    residues: vec![vec![BigInt::zero(); ncols * phi]; ncols - key.0],
                    modulus: BigInt::one(),
                });
            }
        }
        let s = state.as_mut().expect("state set");

        // Vandermonde inversion: images[t] = Σ_k c_k ω_t^k
        let mf = embs[0].clone();
        let nodes: Vec<u32> = embs.iter().map(|f| f.image(&field.zeta_pow(1)).expect("unit")).collect();
        let mut vand: Vec<Vec<u32>> = nodes
            .iter()
            .enumerate()
            .map(|(t, &w)| {
                let mut row = Vec::with_capacity(2 * phi);
                let mut x = 1u32;
                for _ in 0..phi {
                    row.push(x);
                    x = mul_mod(x, w, p);
                }
                row.extend((0..phi).map(|k| u32::from(k == t)));
                row
            })
            .collect();
        gauss_jordan(&mf, &mut vand, phi);
        let vinv: Vec<Vec<u32>> = vand.iter().map(|r| r[phi..].to_vec()).collect();

        let pb = BigInt::from(p);
        let minv = {
            let mm = (&s.modulus % &pb).try_into().unwrap_or(0u64);
            if s.modulus.is_one() {
                0
            } else {
                inv_mod(mm, p as u64)
            }
        };
        for (v, res) in s.residues.iter_mut().enumerate() {
            for c in 0..ncols {
                for k in 0..phi {
                    let mut x = 0u64;
                    for t in 0..phi {
                        x = (x + vinv[k][t] as u64 * images[t][v][c] as u64) % p as u64;
                    }
                    let slot = &mut res[c * phi + k];
                    if s.modulus.is_one() {
                        *slot = BigInt::from(x);
                    } else {
                        // Garner step
                        let cur: u64 = (&*slot % &pb).try_into().unwrap_or(0);
                        let diff = (x + p as u64 - cur) % p as u64;
                        let t = diff * minv % p as u64;
                        if t != 0 {
                            *slot += &s.modulus * t;
                        }
                    }
                }
            }
        }
        s.modulus *= p;

        let mut candidate = Vec::with_capacity(s.residues.len());
        let mut ok = true;
        'vectors: for res in &s.residues {
            let mut vec = Vec::with_capacity(ncols);
            for c in 0..ncols {
                let mut coeffs = Vec::with_capacity(phi);
                for k in 0..phi {
                    match rational_reconstruct(&res[c * phi + k], &s.modulus) {
                        Some(r) => coeffs.push(r),
                        None => {
                            ok = false;
                            break 'vectors;
                        }
                    }
                }
                vec.push(field.from_coeffs(&coeffs));
            }
            candidate.push(vec);
        }
        if ok && verify(&candidate) {
            log::debug!("lift succeeded with modulus of {} bits", s.modulus.bits());
            return Ok(candidate);
        }
    }
    Err(Error::Reconstruction(format!("no verified lift within {MAX_PRIMES} primes")))
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn modular_helpers() {
        assert_eq!(inv_mod(3, 7), 5);
        assert!(is_prime(2));
        assert!(is_prime(134217689));
        assert!(!is_prime(134217727));
        for p in primes_for_conductor(3).take(5) {
            assert!(is_prime(p));
            assert_eq!(p % 3, 1);
            let w = root_of_unity(3, p);
            assert_ne!(w, 1);
            assert_eq!(pow_mod(w as u64, 3, p as u64), 1);
        }
    }

    #[test]
    fn reconstruction() {
        let m = BigInt::from(1_000_003u64);
        let a = (BigInt::from(-7) * BigInt::from(inv_mod(9, 1_000_003))).mod_floor(&m);
        assert_eq!(rational_reconstruct(&a, &m), Some(Rational::new((-7).into(), 9.into())));
    }

    #[test]
    fn echelon_matches_dense_gauss_jordan() {
        let p = 101u32;
        let f = ModField::new(p, CycloField::get(1).unwrap(), 1);
        let rows: Vec<Vec<u32>> = (0..9)
            .map(|i| (0..7).map(|j| ((i * 7 + j * j * 3 + i * j) % 5) as u32).collect())
            .collect();
        let mut ech = ModEchelon::new(p, 7);
        ech.add_rows(&rows[..4]);
        ech.add_rows(&rows[4..]);
        let mut dense = rows.clone();
        let (pivots, _) = gauss_jordan(&f, &mut dense, 7);
        assert_eq!(ech.pivots(), pivots);
        let ns = super::super::matrix::nullspace_from_rref(&f, &dense, &pivots, 7);
        assert_eq!(ech.nullspace(), ns);
    }
}
