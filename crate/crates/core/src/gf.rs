//! Arithmetic in GF(p^e).
//!
//! A [`Field`] is built from a prime `p`, an exponent `e` and a monic
//! irreducible modulus of degree `e` over GF(p). Elements are plain
//! [`Elem`] values holding the base-`p` digit encoding `Σ d_i p^i` of the
//! residue `Σ d_i θ^i`, where `θ` is the class of `x` modulo the modulus.
//!
//! Multiplication is defined by polynomial multiplication followed by
//! reduction. For fields with at most 2^16 elements exp/log tables are
//! built from that reference product at construction time; both paths give
//! identical results.

use std::fmt;
use std::sync::Arc;

use crate::error::{Error, Result};

/// Largest supported field order.
pub const MAX_ORDER: u64 = 1 << 20;

const TABLE_LIMIT: u32 = 1 << 16;
const ADD_TABLE_LIMIT: u32 = 256;

/// A field element, stored as its base-`p` digit encoding.
#[derive(Copy, Clone, Debug, Default, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Elem(pub(crate) u32);

impl Elem {
    pub const ZERO: Elem = Elem(0);
    pub const ONE: Elem = Elem(1);

    pub fn enc(self) -> u32 {
        self.0
    }

    pub fn is_zero(self) -> bool {
        self.0 == 0
    }
}

/// Conway polynomials (coefficients `c_0..c_e`) for the default table.
///
/// GF(4), GF(8) and GF(9) use `θ²+θ+1`, `θ³+θ+1` and `θ²+2θ+2`.
pub fn default_modulus(p: u32, e: u32) -> Option<Vec<u32>> {
    let m: &[u32] = match (p, e) {
        (2, 1) => &[1, 1],
        (3, 1) => &[1, 1],
        (5, 1) => &[3, 1],
        (7, 1) => &[4, 1],
        (11, 1) => &[9, 1],
        (13, 1) => &[11, 1],
        (2, 2) => &[1, 1, 1],
        (2, 3) => &[1, 1, 0, 1],
        (3, 2) => &[2, 2, 1],
        (2, 4) => &[1, 1, 0, 0, 1],
        (5, 2) => &[2, 4, 1],
        (3, 3) => &[1, 2, 0, 1],
        (2, 5) => &[1, 0, 1, 0, 0, 1],
        _ => return None,
    };
    Some(m.to_vec())
}

/// Handle to a finite field. Cheap to clone; equality compares `p`, `e`
/// and the modulus.
#[derive(Clone)]
pub struct Field(Arc<Inner>);

struct Inner {
    p: u32,
    e: u32,
    q: u32,
    modulus: Vec<u32>,
    exp: Vec<u32>,
    log: Vec<u32>,
    frob: Vec<u32>,
    add: Vec<u8>,
    primitive: Elem,
}

impl PartialEq for Field {
    fn eq(&self, other: &Self) -> bool {
        Arc::ptr_eq(&self.0, &other.0)
            || (self.0.p == other.0.p && self.0.e == other.0.e && self.0.modulus == other.0.modulus)
    }
}

impl Eq for Field {}

impl fmt::Debug for Field {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "GF({}^{}) mod {:?}", self.0.p, self.0.e, self.0.modulus)
    }
}

fn is_prime(n: u32) -> bool {
    if n < 2 {
        return false;
    }
    let mut d = 2u32;
    while d * d <= n {
        if n.is_multiple_of(d) {
            return false;
        }
        d += 1;
    }
    true
}

fn prime_factors(mut n: u32) -> Vec<u32> {
    let mut out = Vec::new();
    let mut d = 2u32;
    while d * d <= n {
        if n.is_multiple_of(d) {
            out.push(d);
            while n.is_multiple_of(d) {
                n /= d;
            }
        }
        d += 1;
    }
    if n > 1 {
        out.push(n);
    }
    out
}

impl Field {
    /// Field with the default modulus for `q = p^e`.
    pub fn new(p: u32, e: u32) -> Result<Field> {
        let modulus = default_modulus(p, e).ok_or_else(|| {
            Error::InvalidField(format!("no default modulus for p={p} e={e}; supply one"))
        })?;
        Field::with_modulus(p, e, &modulus)
    }

    /// Shorthand for the default field of order `q`.
    pub fn of_order(q: u32) -> Result<Field> {
        for p in 2..=q {
            if q.is_multiple_of(p) {
                let mut e = 0;
                let mut r = q;
                while r.is_multiple_of(p) {
                    r /= p;
                    e += 1;
                }
                if r != 1 {
                    break;
                }
                return Field::new(p, e);
            }
        }
        Err(Error::InvalidField(format!("{q} is not a prime power")))
    }

    /// Field `GF(p)[x]/(modulus)`; `modulus` lists `c_0..c_e` and must be
    /// monic and irreducible.
    pub fn with_modulus(p: u32, e: u32, modulus: &[u32]) -> Result<Field> {
        if !is_prime(p) {
            return Err(Error::InvalidField(format!("{p} is not prime")));
        }
        if e == 0 {
            return Err(Error::InvalidField("exponent must be positive".into()));
        }
        let q = (p as u64)
            .checked_pow(e)
            .filter(|&q| q <= MAX_ORDER)
            .ok_or_else(|| {
                Error::InvalidField(format!("order {p}^{e} exceeds the supported maximum"))
            })? as u32;
        if modulus.len() != e as usize + 1 {
            return Err(Error::InvalidField(format!(
                "modulus needs {} coefficients, got {}",
                e + 1,
                modulus.len()
            )));
        }
        if modulus.iter().any(|&c| c >= p) {
            return Err(Error::InvalidField(
                "modulus coefficient out of range".into(),
            ));
        }
        if modulus[e as usize] != 1 {
            return Err(Error::InvalidField("modulus must be monic".into()));
        }
        if !poly::is_irreducible(modulus, p) {
            return Err(Error::NotIrreducible { p });
        }

        let mut inner = Inner {
            p,
            e,
            q,
            modulus: modulus.to_vec(),
            exp: Vec::new(),
            log: Vec::new(),
            frob: Vec::new(),
            add: Vec::new(),
            primitive: Elem::ONE,
        };
        inner.primitive = inner.find_primitive();
        if q <= TABLE_LIMIT {
            let g = inner.primitive;
            let mut exp = Vec::with_capacity(q as usize - 1);
            let mut log = vec![0u32; q as usize];
            let mut x = Elem::ONE;
            for i in 0..q - 1 {
                exp.push(x.0);
                log[x.0 as usize] = i;
                x = inner.mul_ref(x, g);
            }
            inner.frob = (0..q).map(|a| inner.pow_ref(Elem(a), p as u64).0).collect();
            inner.exp = exp;
            inner.log = log;
        }
        if e > 1 && p != 2 && q <= ADD_TABLE_LIMIT {
            let mut add = vec![0u8; (q * q) as usize];
            for a in 0..q {
                for b in 0..q {
                    add[(a * q + b) as usize] = inner.add_digits(Elem(a), Elem(b)).0 as u8;
                }
            }
            inner.add = add;
        }
        Ok(Field(Arc::new(inner)))
    }

    pub fn characteristic(&self) -> u32 {
        self.0.p
    }

    pub fn degree(&self) -> u32 {
        self.0.e
    }

    pub fn order(&self) -> u32 {
        self.0.q
    }

    pub fn modulus(&self) -> &[u32] {
        &self.0.modulus
    }

    /// Whether this field uses the default-table modulus for its order.
    pub fn has_default_modulus(&self) -> bool {
        default_modulus(self.0.p, self.0.e).as_deref() == Some(&self.0.modulus[..])
    }

    /// Element with the given encoding.
    pub fn elem(&self, enc: u32) -> Result<Elem> {
        if enc < self.0.q {
            Ok(Elem(enc))
        } else {
            Err(Error::ElementOutOfRange {
                enc: enc as u64,
                q: self.0.q,
            })
        }
    }

    /// Iterator over all elements in encoding order.
    pub fn elements(&self) -> impl Iterator<Item = Elem> {
        (0..self.0.q).map(Elem)
    }

    /// `θ`, the class of `x`. Equals `p` as an encoding; for `e = 1` it is
    /// the root of the linear modulus.
    pub fn theta(&self) -> Elem {
        if self.0.e == 1 {
            let c0 = self.0.modulus[0];
            Elem((self.0.p - c0) % self.0.p)
        } else {
            Elem(self.0.p)
        }
    }

    pub fn add(&self, a: Elem, b: Elem) -> Elem {
        let inner = &*self.0;
        if inner.p == 2 {
            Elem(a.0 ^ b.0)
        } else if inner.e == 1 {
            let s = a.0 + b.0;
            Elem(if s >= inner.p { s - inner.p } else { s })
        } else if !inner.add.is_empty() {
            Elem(inner.add[(a.0 * inner.q + b.0) as usize] as u32)
        } else {
            inner.add_digits(a, b)
        }
    }

    pub fn neg(&self, a: Elem) -> Elem {
        let inner = &*self.0;
        if inner.p == 2 {
            return a;
        }
        if inner.e == 1 {
            return Elem((inner.p - a.0) % inner.p);
        }
        let mut out = 0;
        let mut place = 1;
        let mut x = a.0;
        for _ in 0..inner.e {
            let d = x % inner.p;
            out += ((inner.p - d) % inner.p) * place;
            x /= inner.p;
            place *= inner.p;
        }
        Elem(out)
    }

    pub fn sub(&self, a: Elem, b: Elem) -> Elem {
        self.add(a, self.neg(b))
    }

    pub fn mul(&self, a: Elem, b: Elem) -> Elem {
        if a.0 == 0 || b.0 == 0 {
            return Elem::ZERO;
        }
        let inner = &*self.0;
        if inner.exp.is_empty() {
            return inner.mul_ref(a, b);
        }
        let n = inner.q - 1;
        let s = inner.log[a.0 as usize] + inner.log[b.0 as usize];
        Elem(inner.exp[(if s >= n { s - n } else { s }) as usize])
    }

    /// Product by polynomial multiplication and reduction, never using the
    /// tables. Exposed so the tables can be checked against it.
    pub fn mul_reference(&self, a: Elem, b: Elem) -> Elem {
        self.0.mul_ref(a, b)
    }

    pub fn inv(&self, a: Elem) -> Result<Elem> {
        if a.0 == 0 {
            return Err(Error::DivisionByZero);
        }
        let inner = &*self.0;
        if inner.exp.is_empty() {
            return Ok(inner.pow_ref(a, inner.q as u64 - 2));
        }
        let n = inner.q - 1;
        Ok(Elem(
            inner.exp[((n - inner.log[a.0 as usize]) % n) as usize],
        ))
    }

    pub fn div(&self, a: Elem, b: Elem) -> Result<Elem> {
        Ok(self.mul(a, self.inv(b)?))
    }

    pub fn pow(&self, a: Elem, mut k: u64) -> Elem {
        let mut base = a;
        let mut acc = Elem::ONE;
        while k > 0 {
            if k & 1 == 1 {
                acc = self.mul(acc, base);
            }
            base = self.mul(base, base);
            k >>= 1;
        }
        acc
    }

    /// `σ^ℓ(a) = a^(p^ℓ)`; `ell` is reduced modulo `e`.
    pub fn frobenius(&self, a: Elem, ell: u32) -> Elem {
        let inner = &*self.0;
        let ell = ell % inner.e;
        let mut x = a;
        for _ in 0..ell {
            x = if inner.frob.is_empty() {
                self.pow(x, inner.p as u64)
            } else {
                Elem(inner.frob[x.0 as usize])
            };
        }
        x
    }

    /// Smallest-encoding element of multiplicative order `q - 1`.
    pub fn primitive_element(&self) -> Elem {
        self.0.primitive
    }

    /// Discrete logarithm to the base [`Field::primitive_element`].
    pub fn log(&self, a: Elem) -> Option<u32> {
        if a.0 == 0 {
            return None;
        }
        let inner = &*self.0;
        if !inner.log.is_empty() {
            return Some(inner.log[a.0 as usize]);
        }
        let mut x = Elem::ONE;
        for i in 0..inner.q - 1 {
            if x == a {
                return Some(i);
            }
            x = inner.mul_ref(x, inner.primitive);
        }
        None
    }

    /// Multiplicative order of a nonzero element.
    pub fn multiplicative_order(&self, a: Elem) -> Option<u32> {
        if a.0 == 0 {
            return None;
        }
        let n = self.0.q - 1;
        let mut order = n;
        for r in prime_factors(n) {
            while order.is_multiple_of(r) && self.pow(a, (order / r) as u64) == Elem::ONE {
                order /= r;
            }
        }
        Some(order)
    }

    /// Parse a token: `0`, an integer encoding in `[0, q)`, or `a^k` / `a`
    /// where `a` is the primitive element.
    pub fn parse_elem(&self, token: &str) -> Result<Elem> {
        let bad = || Error::BadToken(token.to_string());
        if let Some(rest) = token.strip_prefix('a') {
            let k: u64 = if rest.is_empty() {
                1
            } else {
                rest.strip_prefix('^')
                    .ok_or_else(bad)?
                    .parse()
                    .map_err(|_| bad())?
            };
            if k >= (self.0.q as u64 - 1).max(1) {
                return Err(Error::BadToken(format!(
                    "{token}: exponent must be below {}",
                    (self.0.q - 1).max(1)
                )));
            }
            return Ok(self.pow(self.0.primitive, k));
        }
        let enc: u64 = token.parse().map_err(|_| bad())?;
        if enc >= self.0.q as u64 {
            return Err(Error::ElementOutOfRange { enc, q: self.0.q });
        }
        Ok(Elem(enc as u32))
    }

    /// Inverse of [`Field::parse_elem`]: prime-subfield elements print as
    /// integers, everything else as `a^k` (`a` when k = 1).
    pub fn format_elem(&self, a: Elem) -> String {
        if a.0 < self.0.p || self.0.log.is_empty() {
            return a.0.to_string();
        }
        match self.0.log[a.0 as usize] {
            1 => "a".to_string(),
            k => format!("a^{k}"),
        }
    }
}

impl Inner {
    fn add_digits(&self, a: Elem, b: Elem) -> Elem {
        let (mut x, mut y) = (a.0, b.0);
        let mut out = 0;
        let mut place = 1;
        for _ in 0..self.e {
            out += ((x % self.p + y % self.p) % self.p) * place;
            x /= self.p;
            y /= self.p;
            place *= self.p;
        }
        Elem(out)
    }

    fn digits(&self, a: Elem) -> Vec<u32> {
        let mut x = a.0;
        (0..self.e)
            .map(|_| {
                let d = x % self.p;
                x /= self.p;
                d
            })
            .collect()
    }

    fn mul_ref(&self, a: Elem, b: Elem) -> Elem {
        let p = self.p as u64;
        let e = self.e as usize;
        let da = self.digits(a);
        let db = self.digits(b);
        let mut prod = vec![0u64; 2 * e - 1];
        for (i, &x) in da.iter().enumerate() {
            for (j, &y) in db.iter().enumerate() {
                prod[i + j] = (prod[i + j] + x as u64 * y as u64) % p;
            }
        }
        // x^e = -(c_0 + ... + c_{e-1} x^{e-1})
        for k in (e..2 * e - 1).rev() {
            let c = prod[k];
            if c == 0 {
                continue;
            }
            prod[k] = 0;
            for i in 0..e {
                let t = c * self.modulus[i] as u64 % p;
                prod[k - e + i] = (prod[k - e + i] + p - t) % p;
            }
        }
        let mut out = 0u64;
        for &d in prod[..e].iter().rev() {
            out = out * p + d;
        }
        Elem(out as u32)
    }

    fn pow_ref(&self, a: Elem, mut k: u64) -> Elem {
        let mut base = a;
        let mut acc = Elem::ONE;
        while k > 0 {
            if k & 1 == 1 {
                acc = self.mul_ref(acc, base);
            }
            base = self.mul_ref(base, base);
            k >>= 1;
        }
        acc
    }

    fn find_primitive(&self) -> Elem {
        let n = self.q - 1;
        if n == 1 {
            return Elem::ONE;
        }
        let factors = prime_factors(n);
        (1..self.q)
            .map(Elem)
            .find(|&g| {
                factors
                    .iter()
                    .all(|&r| self.pow_ref(g, (n / r) as u64) != Elem::ONE)
            })
            .expect("multiplicative group of a finite field is cyclic")
    }
}

/// Checked element wrapper carrying its field.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct FieldElement {
    field: Field,
    value: Elem,
}

impl FieldElement {
    pub fn new(field: &Field, enc: u32) -> Result<Self> {
        Ok(FieldElement {
            value: field.elem(enc)?,
            field: field.clone(),
        })
    }

    pub fn field(&self) -> &Field {
        &self.field
    }

    pub fn value(&self) -> Elem {
        self.value
    }

    fn same_field(&self, other: &Self) -> Result<()> {
        if self.field == other.field {
            Ok(())
        } else {
            Err(Error::FieldMismatch)
        }
    }

    fn with(&self, value: Elem) -> Self {
        FieldElement {
            field: self.field.clone(),
            value,
        }
    }

    pub fn add(&self, other: &Self) -> Result<Self> {
        self.same_field(other)?;
        Ok(self.with(self.field.add(self.value, other.value)))
    }

    pub fn mul(&self, other: &Self) -> Result<Self> {
        self.same_field(other)?;
        Ok(self.with(self.field.mul(self.value, other.value)))
    }

    pub fn inv(&self) -> Result<Self> {
        Ok(self.with(self.field.inv(self.value)?))
    }

    pub fn frobenius(&self, ell: u32) -> Self {
        self.with(self.field.frobenius(self.value, ell))
    }
}

impl fmt::Display for FieldElement {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.field.format_elem(self.value))
    }
}

/// Polynomials over GF(p), coefficients low to high.
mod poly {
    fn trim(a: &mut Vec<u32>) {
        while a.last() == Some(&0) {
            a.pop();
        }
    }

    fn inv_mod(a: u32, p: u32) -> u32 {
        // p is prime and small; Fermat
        let mut acc = 1u64;
        let mut base = a as u64 % p as u64;
        let mut k = p as u64 - 2;
        while k > 0 {
            if k & 1 == 1 {
                acc = acc * base % p as u64;
            }
            base = base * base % p as u64;
            k >>= 1;
        }
        acc as u32
    }

    fn rem(a: &[u32], m: &[u32], p: u32) -> Vec<u32> {
        let mut r = a.to_vec();
        trim(&mut r);
        let dm = m.len() - 1;
        let lead_inv = inv_mod(m[dm], p) as u64;
        while r.len() > dm {
            let top = r.len() - 1;
            let c = r[top] as u64 * lead_inv % p as u64;
            for i in 0..=dm {
                let t = c * m[i] as u64 % p as u64;
                r[top - dm + i] = ((r[top - dm + i] as u64 + p as u64 - t) % p as u64) as u32;
            }
            trim(&mut r);
        }
        r
    }

    fn mul_mod(a: &[u32], b: &[u32], m: &[u32], p: u32) -> Vec<u32> {
        if a.is_empty() || b.is_empty() {
            return Vec::new();
        }
        let mut out = vec![0u64; a.len() + b.len() - 1];
        for (i, &x) in a.iter().enumerate() {
            for (j, &y) in b.iter().enumerate() {
                out[i + j] = (out[i + j] + x as u64 * y as u64) % p as u64;
            }
        }
        let out: Vec<u32> = out.into_iter().map(|c| c as u32).collect();
        rem(&out, m, p)
    }

    fn gcd(a: &[u32], b: &[u32], p: u32) -> Vec<u32> {
        let mut a = a.to_vec();
        let mut b = b.to_vec();
        trim(&mut a);
        trim(&mut b);
        while !b.is_empty() {
            let r = rem(&a, &b, p);
            a = b;
            b = r;
        }
        a
    }

    /// Monic `f` of degree `e` is irreducible iff `gcd(f, x^(p^k) - x) = 1`
    /// for every `1 <= k < e`.
    pub(super) fn is_irreducible(f: &[u32], p: u32) -> bool {
        let e = f.len() - 1;
        if e == 1 {
            return true;
        }
        // x^(p^k) mod f, built by repeated p-th powering
        let mut xpk = rem(&[0, 1], f, p);
        for _ in 1..e {
            let mut acc = vec![1u32];
            let mut base = xpk.clone();
            let mut k = p;
            while k > 0 {
                if k & 1 == 1 {
                    acc = mul_mod(&acc, &base, f, p);
                }
                base = mul_mod(&base, &base, f, p);
                k >>= 1;
            }
            xpk = acc;
            let mut diff = xpk.clone();
            if diff.len() < 2 {
                diff.resize(2, 0);
            }
            diff[1] = (diff[1] + p - 1) % p;
            let g = gcd(f, &diff, p);
            if g.len() > 1 {
                return false;
            }
        }
        true
    }
}
