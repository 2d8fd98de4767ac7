//! Table-driven arithmetic in the small Galois fields GF(q), q in {2,3,4,5,7,8,9},
//! plus the quadratic extensions GF(q²) for q in {2,3,4}.
//!
//! Elements are encoded as integers in `0..q`. For q = p^k the element
//! `b_{k-1}·ω^{k-1} + … + b_1·ω + b_0` has code `Σ b_i·p^i`, so 0 and 1 keep their
//! usual codes. The reduction polynomials are fixed per order so that every table,
//! and therefore every canonical subspace index built on top, is reproducible.

use serde::Serialize;

use crate::error::{Error, Result};

/// Orders accepted by [`make_field`].
pub const SUPPORTED_ORDERS: [usize; 7] = [2, 3, 4, 5, 7, 8, 9];

/// A field element given by its table code.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize)]
pub struct FieldElement(pub u8);

impl FieldElement {
    pub const ZERO: FieldElement = FieldElement(0);
    pub const ONE: FieldElement = FieldElement(1);

    pub fn code(self) -> u8 {
        self.0
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum FieldOp {
    Add,
    Sub,
    Mul,
    Div,
}

/// Monic reduction polynomial, coefficients low degree first, over the field of
/// order `base_order`.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct Modulus {
    pub base_order: usize,
    pub coefficients: Vec<u8>,
}

impl Modulus {
    pub fn degree(&self) -> usize {
        self.coefficients.len() - 1
    }
}

/// Complete addition/multiplication tables of a finite field.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct FieldTable {
    q: usize,
    characteristic: usize,
    add: Vec<u8>,
    mul: Vec<u8>,
    neg: Vec<u8>,
    inv: Vec<u8>,
    modulus: Modulus,
}

/// Returns `(p, k)` with `q = p^k`, if `q` is a prime power.
fn prime_power(q: usize) -> Option<(usize, usize)> {
    if q < 2 {
        return None;
    }
    let p = (2..=q).find(|d| q.is_multiple_of(*d))?;
    let mut rest = q;
    let mut k = 0;
    while rest.is_multiple_of(p) {
        rest /= p;
        k += 1;
    }
    (rest == 1).then_some((p, k))
}

fn fixed_modulus(q: usize) -> Option<Vec<u8>> {
    match q {
        2 | 3 | 5 | 7 => Some(vec![0, 1]),
        // x² + x + 1
        4 => Some(vec![1, 1, 1]),
        // x³ + x + 1
        8 => Some(vec![1, 1, 0, 1]),
        // x² + 1
        9 => Some(vec![1, 0, 1]),
        _ => None,
    }
}

/// Builds GF(q) with the fixed reduction polynomial for `q`.
pub fn make_field(q: usize) -> Result<FieldTable> {
    let (p, k) = prime_power(q).ok_or(Error::UnsupportedOrder(q))?;
    let modulus = fixed_modulus(q).ok_or(Error::UnsupportedOrder(q))?;
    let prime = prime_field(p);
    if k == 1 {
        return Ok(prime);
    }
    Ok(quotient_field(&prime, modulus))
}

fn prime_field(p: usize) -> FieldTable {
    let mut add = vec![0u8; p * p];
    let mut mul = vec![0u8; p * p];
    for a in 0..p {
        for b in 0..p {
            add[a * p + b] = ((a + b) % p) as u8;
            mul[a * p + b] = ((a * b) % p) as u8;
        }
    }
    FieldTable::from_tables(p, p, add, mul, Modulus { base_order: p, coefficients: vec![0, 1] })
}

/// Builds `base[β] / (modulus)`; the modulus must be monic and irreducible.
fn quotient_field(base: &FieldTable, modulus: Vec<u8>) -> FieldTable {
    let bq = base.order();
    let degree = modulus.len() - 1;
    let q = bq.pow(degree as u32);

    let digits = |code: usize| -> Vec<u8> {
        let mut c = code;
        (0..degree)
            .map(|_| {
                let d = (c % bq) as u8;
                c /= bq;
                d
            })
            .collect()
    };
    let encode = |poly: &[u8]| -> usize { poly.iter().rev().fold(0, |acc, &d| acc * bq + d as usize) };

    let mut add = vec![0u8; q * q];
    let mut mul = vec![0u8; q * q];
    for a in 0..q {
        let da = digits(a);
        for b in 0..q {
            let db = digits(b);
            let sum: Vec<u8> = da.iter().zip(&db).map(|(&x, &y)| base.add(x, y)).collect();
            add[a * q + b] = encode(&sum) as u8;

            let mut prod = vec![0u8; 2 * degree - 1];
            for (i, &x) in da.iter().enumerate() {
                for (j, &y) in db.iter().enumerate() {
                    prod[i + j] = base.add(prod[i + j], base.mul(x, y));
                }
            }
            // reduce from the top: β^degree = -(m_0 + … + m_{degree-1} β^{degree-1})
            for top in (degree..prod.len()).rev() {
                let c = prod[top];
                if c == 0 {
                    continue;
                }
                prod[top] = 0;
                for (i, &m) in modulus[..degree].iter().enumerate() {
                    let idx = top - degree + i;
                    prod[idx] = base.sub(prod[idx], base.mul(c, m));
                }
            }
            mul[a * q + b] = encode(&prod[..degree]) as u8;
        }
    }
    FieldTable::from_tables(
        q,
        base.characteristic(),
        add,
        mul,
        Modulus { base_order: bq, coefficients: modulus },
    )
}

impl FieldTable {
    fn from_tables(q: usize, characteristic: usize, add: Vec<u8>, mul: Vec<u8>, modulus: Modulus) -> Self {
        let mut neg = vec![0u8; q];
        let mut inv = vec![0u8; q];
        for a in 0..q {
            for b in 0..q {
                if add[a * q + b] == 0 {
                    neg[a] = b as u8;
                }
                if mul[a * q + b] == 1 {
                    inv[a] = b as u8;
                }
            }
        }
        FieldTable { q, characteristic, add, mul, neg, inv, modulus }
    }

    pub fn order(&self) -> usize {
        self.q
    }

    pub fn characteristic(&self) -> usize {
        self.characteristic
    }

    pub fn modulus(&self) -> &Modulus {
        &self.modulus
    }

    #[inline]
    pub fn add(&self, a: u8, b: u8) -> u8 {
        self.add[a as usize * self.q + b as usize]
    }

    #[inline]
    pub fn mul(&self, a: u8, b: u8) -> u8 {
        self.mul[a as usize * self.q + b as usize]
    }

    #[inline]
    pub fn neg(&self, a: u8) -> u8 {
        self.neg[a as usize]
    }

    #[inline]
    pub fn sub(&self, a: u8, b: u8) -> u8 {
        self.add(a, self.neg(b))
    }

    /// Multiplicative inverse; the entry for 0 is meaningless (0).
    #[inline]
    pub fn inv(&self, a: u8) -> u8 {
        self.inv[a as usize]
    }

    pub fn pow(&self, a: u8, e: usize) -> u8 {
        (0..e).fold(1, |acc, _| self.mul(acc, a))
    }

    pub fn element(&self, code: u8) -> Result<FieldElement> {
        if (code as usize) < self.q {
            Ok(FieldElement(code))
        } else {
            Err(Error::InvalidElement { code: code as usize, q: self.q })
        }
    }

    /// Checked arithmetic on element codes.
    pub fn arith(&self, a: FieldElement, b: FieldElement, op: FieldOp) -> Result<FieldElement> {
        let a = self.element(a.0)?.0;
        let b = self.element(b.0)?.0;
        let r = match op {
            FieldOp::Add => self.add(a, b),
            FieldOp::Sub => self.sub(a, b),
            FieldOp::Mul => self.mul(a, b),
            FieldOp::Div => {
                if b == 0 {
                    return Err(Error::DivisionByZero);
                }
                self.mul(a, self.inv(b))
            }
        };
        Ok(FieldElement(r))
    }
}

/// GF(q²) over a base GF(q) with the maps used for the field-reduction model of
/// PG(3,q). The extension element `c_1·β + c_0` has code `c_1·q + c_0`.
#[derive(Debug, Clone)]
pub struct Extension {
    pub field: FieldTable,
    pub base_order: usize,
}

/// Builds GF(q²) over `base`, using the first monic irreducible `x² + a·x + b`
/// in `(a, b)` code order.
pub fn make_extension(base: &FieldTable) -> Result<Extension> {
    let q = base.order();
    if !matches!(q, 2..=4) {
        return Err(Error::UnsupportedExtension(q));
    }
    let (a, b) = (0..q as u8)
        .flat_map(|a| (0..q as u8).map(move |b| (a, b)))
        .find(|&(a, b)| {
            (0..q as u8).all(|t| base.add(base.add(base.mul(t, t), base.mul(a, t)), b) != 0)
        })
        .ok_or(Error::UnsupportedExtension(q))?;
    Ok(Extension { field: quotient_field(base, vec![b, a, 1]), base_order: q })
}

impl Extension {
    pub fn embed(&self, c: u8) -> u8 {
        c
    }

    /// Coordinates `(c_0, c_1)` of an element in the basis `{1, β}`.
    pub fn decompose(&self, code: u8) -> (u8, u8) {
        let q = self.base_order as u8;
        (code % q, code / q)
    }

    pub fn compose(&self, c0: u8, c1: u8) -> u8 {
        c1 * self.base_order as u8 + c0
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn gf4_products() {
        let f = make_field(4).unwrap();
        assert_eq!(f.mul(2, 2), 3);
        assert_eq!(f.mul(2, 3), 1);
        assert_eq!(f.modulus().coefficients, vec![1, 1, 1]);
    }

    #[test]
    fn unsupported_orders() {
        for q in [0, 1, 6, 10, 11, 16] {
            assert!(matches!(make_field(q), Err(Error::UnsupportedOrder(_))), "q={q}");
        }
    }

    #[test]
    fn checked_arith() {
        let gf2 = make_field(2).unwrap();
        let gf4 = make_field(4).unwrap();
        let gf5 = make_field(5).unwrap();
        let e = FieldElement;
        assert_eq!(gf2.arith(e(1), e(1), FieldOp::Add).unwrap(), e(0));
        assert_eq!(gf5.arith(e(3), e(4), FieldOp::Mul).unwrap(), e(2));
        assert_eq!(gf4.arith(e(1), e(2), FieldOp::Div).unwrap(), e(3));
        assert_eq!(gf5.arith(e(1), e(3), FieldOp::Sub).unwrap(), e(3));
        assert!(matches!(gf4.arith(e(1), e(0), FieldOp::Div), Err(Error::DivisionByZero)));
        assert!(matches!(gf4.arith(e(4), e(1), FieldOp::Add), Err(Error::InvalidElement { .. })));
    }

    #[test]
    fn extension_over_gf2_is_gf4() {
        let ext = make_extension(&make_field(2).unwrap()).unwrap();
        assert_eq!(ext.field, make_field(4).unwrap());
    }

    #[test]
    fn extension_maps() {
        for q in [2usize, 3, 4] {
            let base = make_field(q).unwrap();
            let ext = make_extension(&base).unwrap();
            assert_eq!(ext.field.order(), q * q);
            for c in 0..q as u8 {
                assert_eq!(ext.decompose(ext.embed(c)), (c, 0));
            }
            // embedding is a ring homomorphism
            for a in 0..q as u8 {
                for b in 0..q as u8 {
                    assert_eq!(ext.field.mul(ext.embed(a), ext.embed(b)), ext.embed(base.mul(a, b)));
                    assert_eq!(ext.field.add(ext.embed(a), ext.embed(b)), ext.embed(base.add(a, b)));
                }
            }
        }
        assert!(matches!(
            make_extension(&make_field(5).unwrap()),
            Err(Error::UnsupportedExtension(5))
        ));
    }
}
