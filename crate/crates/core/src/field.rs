//! Arithmetic in `F_{p^m}` with a designated primitive element `z` and a
//! designated subfield tower `F_{q^s} / F_q`.
//!
//! Elements are stored by discrete logarithm to `z`. Multiplication and
//! inversion are exponent arithmetic; addition goes through a Zech table
//! (`1 + z^k = z^{zech(k)}`). The packed coefficient-vector form (base-`p`
//! digits, constant term first) is used only to build the tables and for
//! conversion.

use std::fmt;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

/// Largest supported field order.
pub const MAX_ORDER: u32 = 1 << 16;

/// A field element: zero, or `z^e` for `0 <= e < order - 1`.
///
/// The derived ordering is the canonical element order used for every
/// deterministic iteration: `0`, then `z^0`, `z^1`, ...
#[derive(Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash, Default)]
pub struct FieldElement(u32);

impl FieldElement {
    pub const ZERO: FieldElement = FieldElement(0);
    pub const ONE: FieldElement = FieldElement(1);

    /// `z^e`; `e` must already be reduced modulo the group order.
    pub(crate) const fn from_log(e: u32) -> Self {
        FieldElement(e + 1)
    }

    pub fn is_zero(self) -> bool {
        self.0 == 0
    }

    /// Discrete log to the designated primitive element, `None` for zero.
    pub fn log(self) -> Option<u32> {
        self.0.checked_sub(1)
    }

    /// Exponent in the matrix dump convention: `-1` for zero.
    pub fn dump(self) -> i64 {
        self.log().map_or(-1, i64::from)
    }
}

impl fmt::Display for FieldElement {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self.log() {
            None => f.write_str("0"),
            Some(e) => write!(f, "z^{e}"),
        }
    }
}

impl fmt::Debug for FieldElement {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        fmt::Display::fmt(self, f)
    }
}

impl Serialize for FieldElement {
    fn serialize<S: serde::Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        s.collect_str(self)
    }
}

/// Subfield tower `F_{q^s} / F_q` inside the field.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct Tower {
    pub q: u32,
    pub s: u32,
}

impl Tower {
    /// `(q^s - 1) / (q - 1)`, the exponent of the norm map.
    pub fn norm_exponent(&self) -> u64 {
        (u64::from(self.q).pow(self.s) - 1) / (u64::from(self.q) - 1)
    }
}

/// JSON field descriptor `{p, m, modulus:[c_0..c_m], q, s}`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct FieldDescriptor {
    pub p: u32,
    pub m: u32,
    pub modulus: Vec<u32>,
    pub q: u32,
    pub s: u32,
}

#[derive(Clone)]
pub struct FieldSpec {
    p: u32,
    m: u32,
    order: u32,
    modulus: Vec<u32>,
    tower: Tower,
    // exponent -> packed coefficient vector
    exp: Vec<u32>,
    // packed coefficient vector -> element
    log: Vec<FieldElement>,
    // k -> 1 + z^k
    zech: Vec<FieldElement>,
}

impl fmt::Debug for FieldSpec {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.debug_struct("FieldSpec")
            .field("p", &self.p)
            .field("m", &self.m)
            .field("modulus", &self.modulus)
            .field("tower", &self.tower)
            .finish()
    }
}

impl PartialEq for FieldSpec {
    fn eq(&self, other: &Self) -> bool {
        self.p == other.p
            && self.m == other.m
            && self.modulus == other.modulus
            && self.tower == other.tower
    }
}

impl Eq for FieldSpec {}

/// Fixed default moduli `[c_0, .., c_m]`, chosen so that the root `z`
/// reproduces the published worked examples.
fn default_modulus(p: u32, m: u32) -> Option<Vec<u32>> {
    let c: &[u32] = match (p, m) {
        (2, 2) => &[1, 1, 1],
        (2, 3) => &[1, 1, 0, 1],
        (2, 4) => &[1, 1, 0, 0, 1],
        (3, 2) => &[2, 1, 1],
        (3, 3) => &[1, 2, 0, 1],
        (5, 2) => &[2, 4, 1],
        _ => return None,
    };
    Some(c.to_vec())
}

pub fn is_prime(n: u32) -> bool {
    if n < 2 {
        return false;
    }
    let n = u64::from(n);
    let mut d = 2u64;
    while d * d <= n {
        if n.is_multiple_of(d) {
            return false;
        }
        d += 1;
    }
    true
}

/// Splits a prime power into `(p, a)` with `q = p^a`.
pub fn prime_power(q: u32) -> Option<(u32, u32)> {
    if q < 2 {
        return None;
    }
    let p = (2..=q).find(|d| q.is_multiple_of(*d))?;
    let mut rest = q;
    let mut a = 0;
    while rest.is_multiple_of(p) {
        rest /= p;
        a += 1;
    }
    (rest == 1).then_some((p, a))
}

// Remainder of `a` modulo monic `b` over F_p; coefficients constant term first.
fn poly_rem(a: &[u32], b: &[u32], p: u32) -> Vec<u32> {
    let mut r = a.to_vec();
    let db = b.len() - 1;
    while r.len() > db {
        let lead = *r.last().unwrap();
        let shift = r.len() - 1 - db;
        if lead != 0 {
            for (i, &c) in b.iter().enumerate() {
                r[shift + i] = (r[shift + i] + p - (lead * c) % p) % p;
            }
        }
        r.pop();
    }
    while r.last() == Some(&0) {
        r.pop();
    }
    r
}

fn is_irreducible(modulus: &[u32], p: u32) -> bool {
    let m = modulus.len() - 1;
    // trial division by every monic polynomial of degree 1..=m/2
    for d in 1..=m / 2 {
        let count = p.pow(d as u32);
        for code in 0..count {
            let mut divisor: Vec<u32> = (0..d).map(|i| (code / p.pow(i as u32)) % p).collect();
            divisor.push(1);
            if poly_rem(modulus, &divisor, p).is_empty() {
                return false;
            }
        }
    }
    true
}

/// Builds `F_{p^m}`. Without an explicit modulus the fixed default is used
/// when one exists, otherwise the first primitive polynomial in
/// lexicographic coefficient order.
pub fn make_field(p: u32, m: u32, modulus: Option<&[u32]>) -> Result<FieldSpec> {
    if !is_prime(p) {
        return Err(Error::NotPrime(p));
    }
    if m == 0
        || u64::from(p)
            .checked_pow(m)
            .is_none_or(|o| o > u64::from(MAX_ORDER))
    {
        return Err(Error::FieldTooLarge { p, m });
    }
    let tower = if m.is_multiple_of(2) {
        Tower {
            q: p.pow(m / 2),
            s: 2,
        }
    } else {
        Tower { q: p, s: m }
    };
    match modulus {
        Some(c) => FieldSpec::build(p, m, c.to_vec(), tower),
        None => match default_modulus(p, m) {
            Some(c) => FieldSpec::build(p, m, c, tower),
            None => {
                let count = p.pow(m);
                for code in 0..count {
                    let mut c: Vec<u32> = (0..m).map(|i| (code / p.pow(i)) % p).collect();
                    c.push(1);
                    if let Ok(f) = FieldSpec::build(p, m, c, tower) {
                        return Ok(f);
                    }
                }
                unreachable!("every finite field has a primitive polynomial")
            }
        },
    }
}

impl FieldSpec {
    fn build(p: u32, m: u32, modulus: Vec<u32>, tower: Tower) -> Result<Self> {
        if modulus.len() != m as usize + 1
            || modulus.last() != Some(&1)
            || modulus.iter().any(|&c| c >= p)
        {
            return Err(Error::BadModulus(modulus));
        }
        if !is_irreducible(&modulus, p) {
            return Err(Error::ReducibleModulus(modulus));
        }
        let order = p.pow(m);
        let n1 = (order - 1) as usize;
        let mut exp = Vec::with_capacity(n1);
        let mut log = vec![FieldElement::ZERO; order as usize];
        let mut digits = vec![0u32; m as usize];
        digits[0] = 1;
        let pack = |d: &[u32]| d.iter().rev().fold(0u32, |acc, &c| acc * p + c);
        for e in 0..n1 {
            let packed = pack(&digits);
            if e > 0 && packed == 1 {
                return Err(Error::NotPrimitive(modulus));
            }
            exp.push(packed);
            log[packed as usize] = FieldElement::from_log(e as u32);
            // multiply by z and reduce with z^m = -(c_0 + .. + c_{m-1} z^{m-1})
            let top = digits[m as usize - 1];
            for i in (1..m as usize).rev() {
                digits[i] = digits[i - 1];
            }
            digits[0] = 0;
            for i in 0..m as usize {
                digits[i] = (digits[i] + p - (top * modulus[i]) % p) % p;
            }
        }
        if pack(&digits) != 1 {
            return Err(Error::NotPrimitive(modulus));
        }
        let mut field = FieldSpec {
            p,
            m,
            order,
            modulus,
            tower,
            exp,
            log,
            zech: Vec::new(),
        };
        field.zech = (0..n1).map(|k| field.add_packed(1, field.exp[k])).collect();
        Ok(field)
    }

    fn add_packed(&self, a: u32, b: u32) -> FieldElement {
        let (mut a, mut b) = (a, b);
        let mut sum = 0u32;
        let mut place = 1u32;
        for _ in 0..self.m {
            sum += ((a % self.p + b % self.p) % self.p) * place;
            a /= self.p;
            b /= self.p;
            place *= self.p;
        }
        self.log[sum as usize]
    }

    pub fn from_descriptor(d: &FieldDescriptor) -> Result<Self> {
        make_field(d.p, d.m, Some(&d.modulus))?.with_tower(d.q, d.s)
    }

    pub fn descriptor(&self) -> FieldDescriptor {
        FieldDescriptor {
            p: self.p,
            m: self.m,
            modulus: self.modulus.clone(),
            q: self.tower.q,
            s: self.tower.s,
        }
    }

    /// Replaces the designated tower.
    pub fn with_tower(mut self, q: u32, s: u32) -> Result<Self> {
        self.tower = self.check_tower(Tower { q, s })?;
        Ok(self)
    }

    fn check_tower(&self, t: Tower) -> Result<Tower> {
        let bad = Error::BadTower {
            q: t.q,
            s: t.s,
            order: self.order,
        };
        match prime_power(t.q) {
            Some((p, a)) if p == self.p && t.s >= 1 && a * t.s == self.m => Ok(t),
            _ => Err(bad),
        }
    }

    pub fn p(&self) -> u32 {
        self.p
    }

    pub fn m(&self) -> u32 {
        self.m
    }

    pub fn order(&self) -> u32 {
        self.order
    }

    /// Order of the multiplicative group.
    pub fn group_order(&self) -> u32 {
        self.order - 1
    }

    pub fn modulus(&self) -> &[u32] {
        &self.modulus
    }

    pub fn tower(&self) -> Tower {
        self.tower
    }

    /// All elements in canonical order.
    pub fn elements(&self) -> impl Iterator<Item = FieldElement> {
        (0..self.order).map(FieldElement)
    }

    pub fn nonzero_elements(&self) -> impl Iterator<Item = FieldElement> {
        (1..self.order).map(FieldElement)
    }

    /// The element at `index` in canonical order.
    pub fn element(&self, index: u32) -> FieldElement {
        assert!(index < self.order, "element index out of range");
        FieldElement(index)
    }

    /// `z^e` for any integer exponent.
    pub fn zeta_pow(&self, e: i64) -> FieldElement {
        FieldElement::from_log(e.rem_euclid(i64::from(self.group_order())) as u32)
    }

    pub fn zeta(&self) -> FieldElement {
        self.zeta_pow(1)
    }

    /// Image of the integer `c` under `Z -> F_p -> F_{p^m}`.
    pub fn from_int(&self, c: i64) -> FieldElement {
        self.log[c.rem_euclid(i64::from(self.p)) as usize]
    }

    /// Value in `0..p` if `x` lies in the prime field.
    pub fn to_int(&self, x: FieldElement) -> Option<u32> {
        let packed = self.packed(x);
        (packed < self.p).then_some(packed)
    }

    fn packed(&self, x: FieldElement) -> u32 {
        x.log().map_or(0, |e| self.exp[e as usize])
    }

    /// Coefficient vector `[c_0, .., c_{m-1}]` in the basis `1, z, .., z^{m-1}`.
    pub fn to_coeffs(&self, x: FieldElement) -> Vec<u32> {
        let mut v = self.packed(x);
        (0..self.m)
            .map(|_| {
                let c = v % self.p;
                v /= self.p;
                c
            })
            .collect()
    }

    pub fn from_coeffs(&self, coeffs: &[u32]) -> Result<FieldElement> {
        if coeffs.len() != self.m as usize || coeffs.iter().any(|&c| c >= self.p) {
            return Err(Error::Invalid(format!("coefficient vector {coeffs:?}")));
        }
        let packed = coeffs.iter().rev().fold(0u32, |acc, &c| acc * self.p + c);
        Ok(self.log[packed as usize])
    }

    pub fn add(&self, x: FieldElement, y: FieldElement) -> FieldElement {
        match (x.log(), y.log()) {
            (None, _) => y,
            (_, None) => x,
            (Some(a), Some(b)) => {
                let n1 = self.group_order();
                let k = (b + n1 - a) % n1;
                self.mul(FieldElement::from_log(a), self.zech[k as usize])
            }
        }
    }

    pub fn neg(&self, x: FieldElement) -> FieldElement {
        match x.log() {
            None => x,
            Some(_) if self.p == 2 => x,
            Some(e) => FieldElement::from_log((e + self.group_order() / 2) % self.group_order()),
        }
    }

    pub fn sub(&self, x: FieldElement, y: FieldElement) -> FieldElement {
        self.add(x, self.neg(y))
    }

    pub fn mul(&self, x: FieldElement, y: FieldElement) -> FieldElement {
        match (x.log(), y.log()) {
            (Some(a), Some(b)) => FieldElement::from_log((a + b) % self.group_order()),
            _ => FieldElement::ZERO,
        }
    }

    pub fn inv(&self, x: FieldElement) -> Result<FieldElement> {
        let e = x.log().ok_or(Error::InverseOfZero)?;
        Ok(FieldElement::from_log(
            (self.group_order() - e) % self.group_order(),
        ))
    }

    pub fn div(&self, x: FieldElement, y: FieldElement) -> Result<FieldElement> {
        Ok(self.mul(x, self.inv(y)?))
    }

    pub fn pow(&self, x: FieldElement, k: u64) -> FieldElement {
        match x.log() {
            None if k == 0 => FieldElement::ONE,
            None => FieldElement::ZERO,
            Some(e) => {
                let n1 = u64::from(self.group_order());
                FieldElement::from_log(((u64::from(e) * (k % n1)) % n1) as u32)
            }
        }
    }

    /// Sum of a sequence of elements.
    pub fn sum<I: IntoIterator<Item = FieldElement>>(&self, it: I) -> FieldElement {
        it.into_iter()
            .fold(FieldElement::ZERO, |a, b| self.add(a, b))
    }

    /// Multiplicative order of a nonzero element.
    pub fn multiplicative_order(&self, x: FieldElement) -> Option<u32> {
        let e = x.log()?;
        let n1 = self.group_order();
        Some(n1 / gcd(n1, e))
    }

    /// Additive order: `1` for zero, `p` otherwise.
    pub fn additive_order(&self, x: FieldElement) -> u32 {
        if x.is_zero() {
            1
        } else {
            self.p
        }
    }

    /// `Tr(x) = sum_{i<s} x^{q^i}` for an explicit tower.
    pub fn trace_in(&self, x: FieldElement, tower: Tower) -> Result<FieldElement> {
        let t = self.check_tower(tower)?;
        Ok(self.trace_unchecked(x, t))
    }

    /// `N(x) = x^{(q^s-1)/(q-1)}` for an explicit tower.
    pub fn norm_in(&self, x: FieldElement, tower: Tower) -> Result<FieldElement> {
        let t = self.check_tower(tower)?;
        Ok(self.pow(x, t.norm_exponent()))
    }

    fn trace_unchecked(&self, x: FieldElement, t: Tower) -> FieldElement {
        let mut acc = FieldElement::ZERO;
        let mut frob = x;
        for _ in 0..t.s {
            acc = self.add(acc, frob);
            frob = self.pow(frob, u64::from(t.q));
        }
        acc
    }

    /// Trace over the designated tower.
    pub fn trace(&self, x: FieldElement) -> FieldElement {
        self.trace_unchecked(x, self.tower)
    }

    /// Norm over the designated tower.
    pub fn norm(&self, x: FieldElement) -> FieldElement {
        self.pow(x, self.tower.norm_exponent())
    }

    /// Whether `x` lies in the subfield of order `q`.
    pub fn in_subfield(&self, x: FieldElement, q: u32) -> bool {
        self.pow(x, u64::from(q)) == x
    }

    /// `ker(Tr)` and `ker(N) = {N = 1}` in canonical order.
    pub fn kernel_sets(&self, tower: Tower) -> Result<Kernels> {
        let t = self.check_tower(tower)?;
        let trace = self
            .elements()
            .filter(|&x| self.trace_unchecked(x, t).is_zero())
            .collect();
        let norm = self
            .nonzero_elements()
            .filter(|&x| self.pow(x, t.norm_exponent()) == FieldElement::ONE)
            .collect();
        Ok(Kernels { trace, norm })
    }

    /// Kernels for the designated tower.
    pub fn kernels(&self) -> Kernels {
        self.kernel_sets(self.tower)
            .expect("designated tower is valid")
    }

    /// Parses `0`, `1`, `z`, or `z^e` (`e` any integer, reduced mod the group order).
    pub fn parse_element(&self, s: &str) -> Result<FieldElement> {
        let t = s.trim();
        match t {
            "0" => return Ok(FieldElement::ZERO),
            "1" => return Ok(FieldElement::ONE),
            "z" | "ζ" => return Ok(self.zeta()),
            _ => {}
        }
        let rest = t
            .strip_prefix("z^")
            .or_else(|| t.strip_prefix("ζ^"))
            .ok_or_else(|| Error::parse("field element", s))?;
        let rest = rest
            .strip_prefix('{')
            .and_then(|r| r.strip_suffix('}'))
            .unwrap_or(rest);
        let e: i64 = rest
            .trim()
            .parse()
            .map_err(|_| Error::parse("field element", s))?;
        Ok(self.zeta_pow(e))
    }

    /// Parses an element given as a dumped exponent (`-1` for zero).
    pub fn from_dump(&self, e: i64) -> Result<FieldElement> {
        match e {
            -1 => Ok(FieldElement::ZERO),
            e if e >= 0 && e < i64::from(self.group_order()) => {
                Ok(FieldElement::from_log(e as u32))
            }
            _ => Err(Error::Invalid(format!("exponent {e} out of range"))),
        }
    }
}

/// Kernels of the trace and norm maps of a tower.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct Kernels {
    pub trace: Vec<FieldElement>,
    pub norm: Vec<FieldElement>,
}

pub(crate) fn gcd(a: u32, b: u32) -> u32 {
    if b == 0 {
        a
    } else {
        gcd(b, a % b)
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use proptest::prelude::*;

    fn z(f: &FieldSpec, e: i64) -> FieldElement {
        f.zeta_pow(e)
    }

    fn configured() -> Vec<FieldSpec> {
        [(2, 2), (2, 3), (2, 4), (3, 2), (3, 3), (5, 2)]
            .iter()
            .map(|&(p, m)| make_field(p, m, None).unwrap())
            .collect()
    }

    #[test]
    fn default_moduli_reproduce_examples() {
        let f16 = make_field(2, 4, None).unwrap();
        // z^4 = z + 1
        assert_eq!(z(&f16, 4), f16.add(z(&f16, 1), FieldElement::ONE));
        let f25 = make_field(5, 2, None).unwrap();
        // z^2 - z + 2 = 0
        let lhs = f25.add(f25.sub(z(&f25, 2), z(&f25, 1)), f25.from_int(2));
        assert!(lhs.is_zero());
        let f27 = make_field(3, 3, None).unwrap();
        // z^3 - z + 1 = 0
        let lhs = f27.add(f27.sub(z(&f27, 3), z(&f27, 1)), FieldElement::ONE);
        assert!(lhs.is_zero());
        let f9 = make_field(3, 2, None).unwrap();
        assert_eq!(f9.multiplicative_order(f9.zeta()), Some(8));
    }

    #[test]
    fn construction_errors() {
        assert_eq!(make_field(4, 2, None).unwrap_err(), Error::NotPrime(4));
        assert!(matches!(
            make_field(2, 2, Some(&[1, 0, 1])),
            Err(Error::ReducibleModulus(_))
        ));
        // x^4 + x^3 + x^2 + x + 1 is irreducible over F_2 but its root has order 5
        assert!(matches!(
            make_field(2, 4, Some(&[1, 1, 1, 1, 1])),
            Err(Error::NotPrimitive(_))
        ));
        assert!(matches!(
            make_field(2, 3, Some(&[1, 1, 0])),
            Err(Error::BadModulus(_))
        ));
        assert!(matches!(
            make_field(2, 17, None),
            Err(Error::FieldTooLarge { .. })
        ));
        assert!(matches!(
            make_field(4_294_967_291, 3, None),
            Err(Error::FieldTooLarge { .. })
        ));
    }

    #[test]
    fn fallback_modulus_search() {
        let f = make_field(7, 2, None).unwrap();
        assert_eq!(f.order(), 49);
        assert_eq!(f.multiplicative_order(f.zeta()), Some(48));
    }

    #[test]
    fn arithmetic_examples() {
        let f16 = make_field(2, 4, None).unwrap();
        assert_eq!(f16.mul(z(&f16, 1), z(&f16, 14)), FieldElement::ONE);
        let x = z(&f16, 7);
        assert!(f16.add(x, x).is_zero());
        let f25 = make_field(5, 2, None).unwrap();
        assert_eq!(f25.inv(z(&f25, 3)).unwrap(), z(&f25, 21));
        assert_eq!(f25.inv(FieldElement::ZERO), Err(Error::InverseOfZero));
        assert_eq!(f25.pow(z(&f25, 5), 24), FieldElement::ONE);
    }

    #[test]
    fn trace_and_norm_examples() {
        let f16 = make_field(2, 4, None).unwrap();
        assert!(f16.trace(z(&f16, 5)).is_zero());
        assert!(f16.trace(FieldElement::ZERO).is_zero());
        let f27 = make_field(3, 3, None).unwrap();
        assert_eq!(f27.norm(f27.zeta()), f27.from_int(2));
    }

    #[test]
    fn kernel_examples() {
        let f25 = make_field(5, 2, None).unwrap();
        let k = f25.kernels();
        let exps = |v: &[FieldElement]| v.iter().map(|x| x.dump()).collect::<Vec<_>>();
        assert_eq!(exps(&k.trace), vec![-1, 3, 9, 15, 21]);
        assert_eq!(exps(&k.norm), vec![0, 4, 8, 12, 16, 20]);
        let f16 = make_field(2, 4, None).unwrap();
        assert_eq!(exps(&f16.kernels().trace), vec![-1, 0, 5, 10]);
        let f8 = make_field(2, 3, None).unwrap();
        let k8 = f8.kernels();
        // brute force over all eight elements, independent of kernel_sets
        let tr_zero = f8
            .elements()
            .filter(|&x| f8.sum((0..3).map(|i| f8.pow(x, 1 << i))).is_zero())
            .count();
        assert_eq!((k8.trace.len(), k8.norm.len()), (tr_zero, 7));
        assert_eq!(tr_zero, 4);
    }

    #[test]
    fn tower_validation() {
        let f16 = make_field(2, 4, None).unwrap();
        assert!(f16
            .trace_in(FieldElement::ONE, Tower { q: 2, s: 4 })
            .is_ok());
        assert!(f16
            .trace_in(FieldElement::ONE, Tower { q: 4, s: 3 })
            .is_err());
        assert!(f16.clone().with_tower(3, 2).is_err());
    }

    #[test]
    fn trace_fibres_are_uniform() {
        for f in configured() {
            let t = f.tower();
            let mut counts = std::collections::BTreeMap::new();
            for x in f.elements() {
                let tr = f.trace(x);
                assert!(f.in_subfield(tr, t.q));
                assert!(f.in_subfield(f.norm(x), t.q));
                *counts.entry(tr).or_insert(0u32) += 1;
            }
            assert_eq!(counts.len() as u32, t.q);
            assert!(counts.values().all(|&c| c == t.q.pow(t.s - 1)));
        }
    }

    #[test]
    fn zeta_is_primitive_and_coeffs_roundtrip() {
        for f in configured() {
            let n1 = f.group_order();
            assert_eq!(f.pow(f.zeta(), u64::from(n1)), FieldElement::ONE);
            assert!((1..n1).all(|e| f.zeta_pow(i64::from(e)) != FieldElement::ONE));
            for x in f.elements() {
                assert_eq!(f.from_coeffs(&f.to_coeffs(x)).unwrap(), x);
            }
        }
    }

    #[test]
    fn parse_and_display() {
        let f = make_field(3, 3, None).unwrap();
        for x in f.elements() {
            assert_eq!(f.parse_element(&x.to_string()).unwrap(), x);
        }
        assert_eq!(f.parse_element("z^26").unwrap(), FieldElement::ONE);
        assert_eq!(f.parse_element("z^-1").unwrap(), f.zeta_pow(25));
        assert_eq!(f.parse_element("z^{13}").unwrap(), f.zeta_pow(13));
        assert!(f.parse_element("y^2").is_err());
        assert!(f.parse_element("z^").is_err());
    }

    #[test]
    fn descriptor_roundtrip() {
        let f = make_field(2, 4, None).unwrap();
        let d = f.descriptor();
        let json = serde_json::to_string(&d).unwrap();
        let back: FieldDescriptor = serde_json::from_str(&json).unwrap();
        assert_eq!(FieldSpec::from_descriptor(&back).unwrap(), f);
    }

    fn elem(order: u32) -> impl Strategy<Value = FieldElement> {
        (0..order).prop_map(FieldElement)
    }

    proptest! {
        #[test]
        fn field_axioms_f27(a in elem(27), b in elem(27), c in elem(27)) {
            let f = make_field(3, 3, None).unwrap();
            prop_assert_eq!(f.add(a, b), f.add(b, a));
            prop_assert_eq!(f.add(f.add(a, b), c), f.add(a, f.add(b, c)));
            prop_assert_eq!(f.mul(a, f.add(b, c)), f.add(f.mul(a, b), f.mul(a, c)));
            prop_assert!(f.add(a, f.neg(a)).is_zero());
            if !a.is_zero() {
                prop_assert_eq!(f.mul(a, f.inv(a).unwrap()), FieldElement::ONE);
            }
        }

        #[test]
        fn trace_linear_norm_multiplicative(a in elem(25), b in elem(25), l in 0i64..5) {
            let f = make_field(5, 2, None).unwrap();
            let lam = f.from_int(l);
            prop_assert_eq!(f.trace(f.add(a, b)), f.add(f.trace(a), f.trace(b)));
            prop_assert_eq!(f.trace(f.mul(lam, a)), f.mul(lam, f.trace(a)));
            prop_assert_eq!(f.norm(f.mul(a, b)), f.mul(f.norm(a), f.norm(b)));
        }

        #[test]
        fn trace_linear_f16(a in elem(16), b in elem(16)) {
            let f = make_field(2, 4, None).unwrap();
            prop_assert_eq!(f.trace(f.add(a, b)), f.add(f.trace(a), f.trace(b)));
            prop_assert_eq!(f.norm(f.mul(a, b)), f.mul(f.norm(a), f.norm(b)));
        }
    }
}
