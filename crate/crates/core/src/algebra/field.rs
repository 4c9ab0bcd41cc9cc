//! Field abstraction shared by exact and modular elimination.

use super::cyclo::{CycloField, CycloScalar};
use super::modular::{inv_mod, mul_mod};

/// The operations Gauss-Jordan elimination and constraint assembly need.
pub trait FieldOps: Sync {
    type Elem: Clone + Send + Sync + PartialEq + std::fmt::Debug;

    fn zero(&self) -> Self::Elem;
    fn one(&self) -> Self::Elem;
    fn is_zero(&self, a: &Self::Elem) -> bool;
    fn add(&self, a: &Self::Elem, b: &Self::Elem) -> Self::Elem;
    fn sub(&self, a: &Self::Elem, b: &Self::Elem) -> Self::Elem;
    fn mul(&self, a: &Self::Elem, b: &Self::Elem) -> Self::Elem;
    fn neg(&self, a: &Self::Elem) -> Self::Elem;
    /// Inverse of a nonzero element.
    fn inv(&self, a: &Self::Elem) -> Self::Elem;
    /// Image of an exact scalar; `None` if it is not defined (bad reduction).
    fn image(&self, c: &CycloScalar) -> Option<Self::Elem>;
    fn from_i64(&self, v: i64) -> Self::Elem;
    /// Rough storage cost of an element, used for pivot choice.
    fn weight(&self, _a: &Self::Elem) -> usize {
        1
    }
}

impl FieldOps for &'static CycloField {
    type Elem = CycloScalar;

    fn zero(&self) -> CycloScalar {
        CycloField::zero(self)
    }
    fn one(&self) -> CycloScalar {
        CycloField::one(self)
    }
    fn is_zero(&self, a: &CycloScalar) -> bool {
        a.is_zero()
    }
    fn add(&self, a: &CycloScalar, b: &CycloScalar) -> CycloScalar {
        a + b
    }
    fn sub(&self, a: &CycloScalar, b: &CycloScalar) -> CycloScalar {
        a - b
    }
    fn mul(&self, a: &CycloScalar, b: &CycloScalar) -> CycloScalar {
        a * b
    }
    fn neg(&self, a: &CycloScalar) -> CycloScalar {
        -a
    }
    fn inv(&self, a: &CycloScalar) -> CycloScalar {
        a.inv().expect("inverse of nonzero scalar")
    }
    fn image(&self, c: &CycloScalar) -> Option<CycloScalar> {
        Some(c.clone())
    }
    fn from_i64(&self, v: i64) -> CycloScalar {
        self.int(v)
    }
    fn weight(&self, a: &CycloScalar) -> usize {
        a.numerators()
            .iter()
            .map(|c| c.bits() as usize)
            .sum::<usize>()
            + a.denominator().bits() as usize
    }
}

/// F_p together with an embedding ζ_n ↦ ω of the cyclotomic field.
#[derive(Clone, Debug)]
pub struct ModField {
    p: u32,
    omega_pows: Vec<u32>,
}

impl ModField {
    /// `omega` must be a primitive n-th root of unity mod p for the field's
    /// conductor n; `omega_pows` then has φ(n) entries.
    pub fn new(p: u32, field: &CycloField, omega: u32) -> ModField {
        let mut omega_pows = Vec::with_capacity(field.degree());
        let mut w = 1u32;
        for _ in 0..field.degree() {
            omega_pows.push(w);
            w = mul_mod(w, omega, p);
        }
        ModField { p, omega_pows }
    }

    pub fn prime(&self) -> u32 {
        self.p
    }
}

impl FieldOps for ModField {
    type Elem = u32;

    fn zero(&self) -> u32 {
        0
    }
    fn one(&self) -> u32 {
        1
    }
    fn is_zero(&self, a: &u32) -> bool {
        *a == 0
    }
    fn add(&self, a: &u32, b: &u32) -> u32 {
        let s = a + b;
        if s >= self.p {
            s - self.p
        } else {
            s
        }
    }
    fn sub(&self, a: &u32, b: &u32) -> u32 {
        if a >= b {
            a - b
        } else {
            a + self.p - b
        }
    }
    fn mul(&self, a: &u32, b: &u32) -> u32 {
        mul_mod(*a, *b, self.p)
    }
    fn neg(&self, a: &u32) -> u32 {
        if *a == 0 {
            0
        } else {
            self.p - a
        }
    }
    fn inv(&self, a: &u32) -> u32 {
        inv_mod(*a as u64, self.p as u64) as u32
    }
    fn image(&self, c: &CycloScalar) -> Option<u32> {
        c.mod_image(self.p, &self.omega_pows)
    }
    fn from_i64(&self, v: i64) -> u32 {
        v.rem_euclid(self.p as i64) as u32
    }
}
