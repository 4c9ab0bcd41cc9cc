//! Finite matrix groups over Q(ζ_n): closure from generators, pseudo-reflections
//! and reflection multi-arrangements.

use std::collections::BTreeMap;
use std::fmt;
use std::io::{Read, Write};
use std::path::{Path, PathBuf};

use indexmap::IndexSet;
use num_integer::Integer;
use num_traits::ToPrimitive;
use rayon::prelude::*;
use sha2::{Digest, Sha256};

use crate::algebra::{CycloField, CycloScalar, ExactMatrix, Rational};
use crate::arrangement::{err, parse_header, split_literals, Hyperplane, MultiArrangement};
use crate::error::{Error, Result};

/// Default closure budget.
pub const DEFAULT_MAX_ORDER: usize = 200_000;

/// Environment variable naming the group cache directory.
pub const CACHE_ENV: &str = "MULTIDER_CACHE";

const CACHE_MAGIC: &[u8; 8] = b"MDGRP001";

/// Square matrix with cyclotomic entries.
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct UnitaryMatrix {
    field: &'static CycloField,
    dim: usize,
    entries: Vec<CycloScalar>,
}

impl UnitaryMatrix {
    /// Row-major entries.
    pub fn new(field: &'static CycloField, dim: usize, entries: Vec<CycloScalar>) -> Result<UnitaryMatrix> {
        if entries.len() != dim * dim {
            return Err(Error::Dimension(format!("{} entries for a {dim}x{dim} matrix", entries.len())));
        }
        if let Some(e) = entries.iter().find(|e| e.conductor() != field.conductor()) {
            return Err(Error::ConductorMismatch(e.conductor(), field.conductor()));
        }
        Ok(UnitaryMatrix { field, dim, entries })
    }

    pub fn identity(field: &'static CycloField, dim: usize) -> UnitaryMatrix {
        let entries = (0..dim * dim)
            .map(|k| if k % (dim + 1) == 0 { field.one() } else { field.zero() })
            .collect();
        UnitaryMatrix { field, dim, entries }
    }

    pub fn diagonal(diag: Vec<CycloScalar>) -> UnitaryMatrix {
        let field = diag[0].field();
        let dim = diag.len();
        let mut m = UnitaryMatrix::identity(field, dim);
        for (i, d) in diag.into_iter().enumerate() {
            m.entries[i * dim + i] = d;
        }
        m
    }

    pub fn field(&self) -> &'static CycloField {
        self.field
    }

    pub fn dim(&self) -> usize {
        self.dim
    }

    pub fn get(&self, i: usize, j: usize) -> &CycloScalar {
        &self.entries[i * self.dim + j]
    }

    pub fn entries(&self) -> &[CycloScalar] {
        &self.entries
    }

    pub fn checked_mul(&self, other: &UnitaryMatrix) -> Result<UnitaryMatrix> {
        if self.dim != other.dim {
            return Err(Error::Dimension(format!("{}x{} times {}x{}", self.dim, self.dim, other.dim, other.dim)));
        }
        if self.field.conductor() != other.field.conductor() {
            return Err(Error::ConductorMismatch(self.field.conductor(), other.field.conductor()));
        }
        let n = self.dim;
        let mut entries = Vec::with_capacity(n * n);
        for i in 0..n {
            for j in 0..n {
                let mut acc = self.field.zero();
                for k in 0..n {
                    acc.add_mul(self.get(i, k), other.get(k, j));
                }
                entries.push(acc);
            }
        }
        Ok(UnitaryMatrix {
            field: self.field,
            dim: n,
            entries,
        })
    }

    pub fn is_identity(&self) -> bool {
        *self == UnitaryMatrix::identity(self.field, self.dim)
    }

    pub fn to_exact(&self) -> ExactMatrix {
        ExactMatrix::from_rows(
            self.field,
            self.dim,
            (0..self.dim).map(|i| self.entries[i * self.dim..(i + 1) * self.dim].to_vec()).collect(),
        )
        .expect("square")
    }

    /// w − I.
    pub fn minus_identity(&self) -> ExactMatrix {
        let mut m = self.to_exact();
        for i in 0..self.dim {
            let v = m.get(i, i) - &self.field.one();
            m.set(i, i, v);
        }
        m
    }

    /// Canonical byte encoding; equal matrices have equal encodings.
    pub fn encode(&self) -> Result<Box<[u8]>> {
        Ok(Packed::from_matrix(self)?.encode())
    }
}

impl fmt::Debug for UnitaryMatrix {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let rows: Vec<String> = (0..self.dim)
            .map(|i| {
                let r: Vec<String> = (0..self.dim).map(|j| self.get(i, j).to_string()).collect();
                format!("[{}]", r.join(", "))
            })
            .collect();
        write!(f, "[{}]", rows.join(", "))
    }
}

/// Matrix with one common denominator and i64 power-basis numerators; the
/// working representation during closure.
#[derive(Clone, PartialEq, Eq)]
struct Packed {
    den: i64,
    num: Vec<i64>,
}

struct Ctx {
    field: &'static CycloField,
    dim: usize,
    phi: usize,
}

impl Packed {
    fn from_matrix(m: &UnitaryMatrix) -> Result<Packed> {
        let too_big = || Error::ResourceLimit("matrix entry does not fit in 64 bits".into());
        let mut den = num_bigint::BigInt::from(1);
        for e in &m.entries {
            den = den.lcm(e.denominator());
        }
        let phi = m.field.degree();
        let mut num = Vec::with_capacity(m.entries.len() * phi);
        for e in &m.entries {
            let scale = &den / e.denominator();
            for c in e.numerators() {
                num.push((c * &scale).to_i64().ok_or_else(too_big)?);
            }
        }
        let mut p = Packed {
            den: den.to_i64().ok_or_else(too_big)?,
            num,
        };
        p.normalize();
        Ok(p)
    }

    fn to_matrix(&self, ctx: &Ctx) -> UnitaryMatrix {
        let f = ctx.field;
        let entries = self
            .num
            .chunks(ctx.phi)
            .map(|c| {
                let coeffs: Vec<Rational> = c.iter().map(|&v| Rational::new(v.into(), self.den.into())).collect();
                f.from_coeffs(&coeffs)
            })
            .collect();
        UnitaryMatrix {
            field: f,
            dim: ctx.dim,
            entries,
        }
    }

    fn normalize(&mut self) {
        let mut g = self.den;
        for &v in &self.num {
            if g == 1 {
                break;
            }
            g = g.gcd(&v);
        }
        if g > 1 {
            self.den /= g;
            for v in self.num.iter_mut() {
                *v /= g;
            }
        }
    }

    fn identity(ctx: &Ctx) -> Packed {
        let mut num = vec![0; ctx.dim * ctx.dim * ctx.phi];
        for i in 0..ctx.dim {
            num[(i * ctx.dim + i) * ctx.phi] = 1;
        }
        Packed { den: 1, num }
    }

    /// Product of two entries (power-basis slices) reduced modulo Φ_n.
    fn entry_mul(ctx: &Ctx, a: &[i64], b: &[i64], out: &mut [i128]) {
        let phi = ctx.phi;
        let mut tmp = [0i128; 64];
        let wide = 2 * phi - 1;
        let mut big;
        let t: &mut [i128] = if wide <= 64 {
            &mut tmp[..wide]
        } else {
            big = vec![0i128; wide];
            &mut big
        };
        for (i, &x) in a.iter().enumerate() {
            if x == 0 {
                continue;
            }
            for (j, &y) in b.iter().enumerate() {
                t[i + j] += x as i128 * y as i128;
            }
        }
        for (k, &v) in t.iter().enumerate() {
            if v == 0 {
                continue;
            }
            if k < phi {
                out[k] += v;
            } else {
                for (o, &pv) in out.iter_mut().zip(ctx.field.power_vector(k as i64)) {
                    *o += v * pv as i128;
                }
            }
        }
    }

    fn mul(&self, other: &Packed, ctx: &Ctx) -> Option<Packed> {
        let (n, phi) = (ctx.dim, ctx.phi);
        let mut num = Vec::with_capacity(n * n * phi);
        let mut acc = vec![0i128; phi];
        for i in 0..n {
            for j in 0..n {
                acc.iter_mut().for_each(|a| *a = 0);
                for k in 0..n {
                    let a = &self.num[(i * n + k) * phi..(i * n + k + 1) * phi];
                    let b = &other.num[(k * n + j) * phi..(k * n + j + 1) * phi];
                    Packed::entry_mul(ctx, a, b, &mut acc);
                }
                for &v in &acc {
                    num.push(i64::try_from(v).ok()?);
                }
            }
        }
        let mut p = Packed {
            den: self.den.checked_mul(other.den)?,
            num,
        };
        p.normalize();
        Some(p)
    }

    /// (w − I) scaled by the denominator.
    fn minus_identity(&self, ctx: &Ctx) -> Vec<i64> {
        let mut m = self.num.clone();
        for i in 0..ctx.dim {
            m[(i * ctx.dim + i) * ctx.phi] -= self.den;
        }
        m
    }

    /// Whether w − I has rank exactly one, returning the index of its first
    /// nonzero row.
    fn reflection_row(&self, ctx: &Ctx) -> Option<usize> {
        let (n, phi) = (ctx.dim, ctx.phi);
        let m = self.minus_identity(ctx);
        let entry = |i: usize, j: usize| &m[(i * n + j) * phi..(i * n + j + 1) * phi];
        let (r0, c0) = (0..n * n)
            .map(|k| (k / n, k % n))
            .find(|&(i, j)| entry(i, j).iter().any(|&x| x != 0))?;
        let mut lhs = vec![0i128; phi];
        let mut rhs = vec![0i128; phi];
        for i in 0..n {
            if i == r0 {
                continue;
            }
            for j in 0..n {
                lhs.iter_mut().for_each(|a| *a = 0);
                rhs.iter_mut().for_each(|a| *a = 0);
                Packed::entry_mul(ctx, entry(i, j), entry(r0, c0), &mut lhs);
                Packed::entry_mul(ctx, entry(i, c0), entry(r0, j), &mut rhs);
                if lhs != rhs {
                    return None;
                }
            }
        }
        Some(r0)
    }

    fn encode(&self) -> Box<[u8]> {
        let mut out = Vec::with_capacity(self.num.len() + 2);
        for v in std::iter::once(self.den).chain(self.num.iter().copied()) {
            let mut z = ((v << 1) ^ (v >> 63)) as u64;
            loop {
                let b = (z & 0x7f) as u8;
                z >>= 7;
                if z == 0 {
                    out.push(b);
                    break;
                }
                out.push(b | 0x80);
            }
        }
        out.into_boxed_slice()
    }

    fn decode(bytes: &[u8], len: usize) -> Option<Packed> {
        let mut vals = Vec::with_capacity(len + 1);
        let mut z: u64 = 0;
        let mut shift = 0;
        for &b in bytes {
            if shift >= 64 {
                return None;
            }
            z |= ((b & 0x7f) as u64) << shift;
            shift += 7;
            if b & 0x80 == 0 {
                vals.push(((z >> 1) as i64) ^ -((z & 1) as i64));
                z = 0;
                shift = 0;
            }
        }
        if shift != 0 || vals.len() != len + 1 || vals[0] <= 0 {
            return None;
        }
        let den = vals.remove(0);
        Some(Packed { den, num: vals })
    }
}

/// A pseudo-reflection of the group.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Reflection {
    pub matrix: UnitaryMatrix,
    pub hyperplane: Hyperplane,
    pub order: u32,
}

/// A finite matrix group given by its complete element set.
pub struct ReflGroup {
    field: &'static CycloField,
    dim: usize,
    generators: Vec<UnitaryMatrix>,
    elements: IndexSet<Box<[u8]>>,
    reflections: Vec<Reflection>,
}

impl fmt::Debug for ReflGroup {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.debug_struct("ReflGroup")
            .field("conductor", &self.field.conductor())
            .field("dim", &self.dim)
            .field("order", &self.elements.len())
            .field("reflections", &self.reflections.len())
            .finish()
    }
}

fn check_generators(field: &'static CycloField, dim: usize, gens: &[UnitaryMatrix]) -> Result<Ctx> {
    if dim == 0 {
        return Err(Error::Dimension("group in dimension 0".into()));
    }
    for g in gens {
        if g.dim != dim {
            return Err(Error::Dimension(format!("generator of size {} in dimension {dim}", g.dim)));
        }
        if g.field.conductor() != field.conductor() {
            return Err(Error::ConductorMismatch(g.field.conductor(), field.conductor()));
        }
        if g.to_exact().det()?.is_zero() {
            return Err(Error::SingularGenerator);
        }
    }
    Ok(Ctx {
        field,
        dim,
        phi: field.degree(),
    })
}

/// Breadth-first closure under right multiplication by the generators.
pub fn generate_group(field: &'static CycloField, dim: usize, generators: &[UnitaryMatrix], max_order: usize) -> Result<ReflGroup> {
    let ctx = check_generators(field, dim, generators)?;
    let gens: Vec<Packed> = generators.iter().map(Packed::from_matrix).collect::<Result<_>>()?;
    let len = dim * dim * ctx.phi;
    let mut elements: IndexSet<Box<[u8]>> = IndexSet::new();
    elements.insert(Packed::identity(&ctx).encode());
    let mut next = 0;
    const CHUNK: usize = 4096;
    while next < elements.len() {
        let end = (next + CHUNK).min(elements.len());
        let products: Vec<Result<Vec<Box<[u8]>>>> = (next..end)
            .into_par_iter()
            .map(|i| {
                let w = Packed::decode(&elements[i], len).expect("valid encoding");
                gens.iter()
                    .map(|g| {
                        w.mul(g, &ctx)
                            .map(|p| p.encode())
                            .ok_or_else(|| Error::ResourceLimit("group element entries overflow 64 bits".into()))
                    })
                    .collect()
            })
            .collect();
        for batch in products {
            for e in batch? {
                elements.insert(e);
                if elements.len() > max_order {
                    return Err(Error::GroupBudget(max_order));
                }
            }
        }
        next = end;
    }
    ReflGroup::from_elements(field, dim, generators.to_vec(), elements)
}

/// Hex digest identifying a generator list.
pub fn generators_key(field: &CycloField, dim: usize, generators: &[UnitaryMatrix]) -> Result<String> {
    let mut h = Sha256::new();
    h.update(field.conductor().to_le_bytes());
    h.update((dim as u64).to_le_bytes());
    for g in generators {
        let e = g.encode()?;
        h.update((e.len() as u64).to_le_bytes());
        h.update(&e);
    }
    Ok(hex::encode(h.finalize()))
}

/// Cache directory from [`CACHE_ENV`], defaulting to `.multider-cache`.
pub fn cache_dir_from_env() -> PathBuf {
    std::env::var_os(CACHE_ENV)
        .map(PathBuf::from)
        .unwrap_or_else(|| PathBuf::from(".multider-cache"))
}

/// [`generate_group`] backed by an on-disk element cache.
pub fn generate_group_cached(
    field: &'static CycloField,
    dim: usize,
    generators: &[UnitaryMatrix],
    max_order: usize,
    cache_dir: &Path,
) -> Result<ReflGroup> {
    let path = cache_dir.join(format!("{}.grp", generators_key(field, dim, generators)?));
    if let Some(elements) = read_cache(&path, dim * dim * field.degree(), max_order) {
        check_generators(field, dim, generators)?;
        log::debug!("loaded {} elements from {}", elements.len(), path.display());
        return ReflGroup::from_elements(field, dim, generators.to_vec(), elements);
    }
    let g = generate_group(field, dim, generators, max_order)?;
    if let Err(e) = write_cache(&path, &g.elements) {
        log::warn!("could not write group cache {}: {e}", path.display());
    }
    Ok(g)
}

fn read_cache(path: &Path, len: usize, max_order: usize) -> Option<IndexSet<Box<[u8]>>> {
    let mut data = Vec::new();
    std::fs::File::open(path).ok()?.read_to_end(&mut data).ok()?;
    let rest = data.strip_prefix(CACHE_MAGIC.as_slice())?;
    let count = u64::from_le_bytes(rest.get(..8)?.try_into().ok()?) as usize;
    if count == 0 || count > max_order {
        return None;
    }
    let mut pos = 8;
    let mut set = IndexSet::with_capacity(count);
    for _ in 0..count {
        let n = u32::from_le_bytes(rest.get(pos..pos + 4)?.try_into().ok()?) as usize;
        pos += 4;
        let bytes = rest.get(pos..pos + n)?;
        Packed::decode(bytes, len)?;
        set.insert(bytes.to_vec().into_boxed_slice());
        pos += n;
    }
    (pos == rest.len() && set.len() == count).then_some(set)
}

fn write_cache(path: &Path, elements: &IndexSet<Box<[u8]>>) -> std::io::Result<()> {
    if let Some(dir) = path.parent() {
        std::fs::create_dir_all(dir)?;
    }
    let tmp = path.with_extension(format!("tmp{}", std::process::id()));
    {
        let mut f = std::io::BufWriter::new(std::fs::File::create(&tmp)?);
        f.write_all(CACHE_MAGIC)?;
        f.write_all(&(elements.len() as u64).to_le_bytes())?;
        for e in elements {
            f.write_all(&(e.len() as u32).to_le_bytes())?;
            f.write_all(e)?;
        }
        f.flush()?;
    }
    std::fs::rename(tmp, path)
}

impl ReflGroup {
    fn from_elements(
        field: &'static CycloField,
        dim: usize,
        generators: Vec<UnitaryMatrix>,
        elements: IndexSet<Box<[u8]>>,
    ) -> Result<ReflGroup> {
        let ctx = Ctx {
            field,
            dim,
            phi: field.degree(),
        };
        let len = dim * dim * ctx.phi;
        let identity = Packed::identity(&ctx);
        let found: Vec<(Packed, usize)> = (0..elements.len())
            .into_par_iter()
            .filter_map(|i| {
                let w = Packed::decode(&elements[i], len).expect("valid encoding");
                let row = w.reflection_row(&ctx)?;
                Some((w, row))
            })
            .collect();
        let mut reflections = Vec::with_capacity(found.len());
        for (w, row) in found {
            let mut order = 1u32;
            let mut pw = w.clone();
            while pw != identity {
                pw = pw
                    .mul(&w, &ctx)
                    .ok_or_else(|| Error::ResourceLimit("reflection power overflows".into()))?;
                order += 1;
                if order as usize > elements.len() {
                    return Err(Error::GroupBudget(elements.len()));
                }
            }
            let matrix = w.to_matrix(&ctx);
            let m = matrix.minus_identity();
            let hyperplane = Hyperplane::new(m.row(row).to_vec())?;
            reflections.push(Reflection {
                matrix,
                hyperplane,
                order,
            });
        }
        Ok(ReflGroup {
            field,
            dim,
            generators,
            elements,
            reflections,
        })
    }

    pub fn field(&self) -> &'static CycloField {
        self.field
    }

    pub fn dim(&self) -> usize {
        self.dim
    }

    pub fn generators(&self) -> &[UnitaryMatrix] {
        &self.generators
    }

    pub fn order(&self) -> usize {
        self.elements.len()
    }

    fn ctx(&self) -> Ctx {
        Ctx {
            field: self.field,
            dim: self.dim,
            phi: self.field.degree(),
        }
    }

    /// The `i`-th element in closure order (the identity comes first).
    pub fn element(&self, i: usize) -> UnitaryMatrix {
        let ctx = self.ctx();
        Packed::decode(&self.elements[i], self.dim * self.dim * ctx.phi)
            .expect("valid encoding")
            .to_matrix(&ctx)
    }

    pub fn elements(&self) -> impl Iterator<Item = UnitaryMatrix> + '_ {
        (0..self.order()).map(|i| self.element(i))
    }

    pub fn contains(&self, m: &UnitaryMatrix) -> bool {
        m.encode().is_ok_and(|e| self.elements.contains(&e))
    }

    /// All pseudo-reflections with their hyperplanes and orders.
    pub fn reflections(&self) -> &[Reflection] {
        &self.reflections
    }

    /// Number of reflections of each order.
    pub fn reflection_orders(&self) -> BTreeMap<u32, usize> {
        let mut out = BTreeMap::new();
        for r in &self.reflections {
            *out.entry(r.order).or_insert(0) += 1;
        }
        out
    }

    /// (A(W), ρ): reflecting hyperplanes with ρ(H) the number of reflections
    /// fixing H.
    pub fn reflection_arrangement(&self) -> Result<MultiArrangement> {
        MultiArrangement::normalize(
            self.field,
            self.dim,
            self.reflections.iter().map(|r| (r.hyperplane.normal().to_vec(), 1)).collect::<Vec<_>>(),
        )
    }
}

/// Parse `.mgen` generator data.
pub fn parse_mgen(text: &str) -> Result<(&'static CycloField, usize, Vec<UnitaryMatrix>)> {
    let (field, dim, body) = parse_header(text)?;
    let mut gens = Vec::new();
    for (line, content) in body {
        let rest = content
            .strip_prefix('G')
            .filter(|r| r.starts_with(char::is_whitespace))
            .ok_or_else(|| err(line, "expected `G <entries>`"))?;
        let lits = split_literals(rest).map_err(|m| err(line, &m))?;
        if lits.len() != dim * dim {
            return Err(err(line, &format!("expected {} entries, found {}", dim * dim, lits.len())));
        }
        let entries = lits
            .iter()
            .map(|l| field.parse(l).map_err(|e| err(line, &e.to_string())))
            .collect::<Result<Vec<_>>>()?;
        gens.push(UnitaryMatrix::new(field, dim, entries)?);
    }
    Ok((field, dim, gens))
}

const G25_DATA: &str = include_str!("../data/g25.mgen");
const G26_DATA: &str = include_str!("../data/g26.mgen");
const G32_DATA: &str = include_str!("../data/g32.mgen");

/// Generators of G(r,p,ℓ): the transpositions, diag(ζ_r^p, 1, …) when
/// p < r, and the twisted transposition of x_1, x_2 when r > 1.
pub fn monomial_group_generators(r: u32, p: u32, l: usize) -> Result<(&'static CycloField, Vec<UnitaryMatrix>)> {
    if r == 0 || p == 0 || l == 0 || r % p != 0 {
        return Err(Error::GroupParameters(format!("G({r},{p},{l}) requires r, p, l >= 1 and p | r")));
    }
    let field = CycloField::get(r)?;
    let swap = |i: usize, a: CycloScalar, b: CycloScalar| {
        let mut m = UnitaryMatrix::identity(field, l);
        m.entries[i * l + i] = field.zero();
        m.entries[(i + 1) * l + i + 1] = field.zero();
        m.entries[i * l + i + 1] = a;
        m.entries[(i + 1) * l + i] = b;
        m
    };
    let mut gens: Vec<UnitaryMatrix> = (0..l.saturating_sub(1)).map(|i| swap(i, field.one(), field.one())).collect();
    if p < r {
        let mut d = vec![field.one(); l];
        d[0] = field.zeta_pow(p as i64);
        gens.push(UnitaryMatrix::diagonal(d));
    }
    if l >= 2 && r > 1 {
        gens.push(swap(0, field.zeta_pow(-1), field.zeta_pow(1)));
    }
    Ok((field, gens))
}

/// Generators for a named group: `G25`, `G26`, `G32` or `G(r,p,l)`.
pub fn builtin_generators(name: &str) -> Result<(&'static CycloField, usize, Vec<UnitaryMatrix>)> {
    let compact: String = name.chars().filter(|c| !c.is_whitespace()).collect::<String>().to_ascii_uppercase();
    match compact.as_str() {
        "G25" => parse_mgen(G25_DATA),
        "G26" => parse_mgen(G26_DATA),
        "G32" => parse_mgen(G32_DATA),
        s => {
            let inner = s
                .strip_prefix("G(")
                .and_then(|s| s.strip_suffix(')'))
                .ok_or_else(|| Error::UnknownGroup(name.to_string()))?;
            let parts: Vec<u32> = inner
                .split(',')
                .map(|t| t.parse().map_err(|_| Error::UnknownGroup(name.to_string())))
                .collect::<Result<_>>()?;
            let [r, p, l] = parts[..] else {
                return Err(Error::UnknownGroup(name.to_string()));
            };
            if l as usize > crate::algebra::MAX_VARS {
                return Err(Error::TooManyVariables(l as usize));
            }
            let (field, gens) = monomial_group_generators(r, p, l as usize)?;
            Ok((field, l as usize, gens))
        }
    }
}

/// Generate a named group, optionally through the disk cache.
pub fn builtin_group(name: &str, cache_dir: Option<&Path>) -> Result<ReflGroup> {
    let (field, dim, gens) = builtin_generators(name)?;
    match cache_dir {
        Some(dir) => generate_group_cached(field, dim, &gens, DEFAULT_MAX_ORDER, dir),
        None => generate_group(field, dim, &gens, DEFAULT_MAX_ORDER),
    }
}
