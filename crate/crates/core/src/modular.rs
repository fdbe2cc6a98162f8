//! SL(2,Z) and PSL(2,Z) = <X> * <Y>.
//!
//! Matrices act on column vectors from the left, so `Im(g - id)` is the
//! column span of `g - id`.

use std::fmt;
use std::ops::Mul;

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Signed, Zero};

use crate::exact::{big, Lattice2};
use crate::{Error, Result};

#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct ModularMatrix {
    pub a: BigInt,
    pub b: BigInt,
    pub c: BigInt,
    pub d: BigInt,
}

impl ModularMatrix {
    pub fn new(a: BigInt, b: BigInt, c: BigInt, d: BigInt) -> Result<Self> {
        if &a * &d - &b * &c != BigInt::one() {
            return Err(Error::Invalid(format!("determinant of [[{a},{b}],[{c},{d}]] is not 1")));
        }
        Ok(ModularMatrix { a, b, c, d })
    }

    pub fn from_i64(a: i64, b: i64, c: i64, d: i64) -> Result<Self> {
        Self::new(big(a), big(b), big(c), big(d))
    }

    fn raw(a: i64, b: i64, c: i64, d: i64) -> Self {
        ModularMatrix { a: big(a), b: big(b), c: big(c), d: big(d) }
    }

    pub fn identity() -> Self {
        Self::raw(1, 0, 0, 1)
    }

    pub fn minus_identity() -> Self {
        Self::raw(-1, 0, 0, -1)
    }

    /// Order 3.
    pub fn x() -> Self {
        Self::raw(-1, 1, -1, 0)
    }

    /// Square is `-id`.
    pub fn y() -> Self {
        Self::raw(0, -1, 1, 0)
    }

    /// `[[1,1],[0,1]] = XY`.
    pub fn t() -> Self {
        Self::raw(1, 1, 0, 1)
    }

    pub fn inverse(&self) -> Self {
        ModularMatrix { a: self.d.clone(), b: -&self.b, c: -&self.c, d: self.a.clone() }
    }

    pub fn neg(&self) -> Self {
        ModularMatrix { a: -&self.a, b: -&self.b, c: -&self.c, d: -&self.d }
    }

    pub fn pow(&self, k: i64) -> Self {
        let base = if k < 0 { self.inverse() } else { self.clone() };
        let mut r = Self::identity();
        for _ in 0..k.unsigned_abs() {
            r = &r * &base;
        }
        r
    }

    pub fn trace(&self) -> BigInt {
        &self.a + &self.d
    }

    pub fn is_identity(&self) -> bool {
        *self == Self::identity()
    }

    /// Equality in PSL(2,Z).
    pub fn eq_psl(&self, other: &Self) -> bool {
        self == other || *self == other.neg()
    }

    /// `g - id` row-major.
    pub fn minus_id(&self) -> [[BigInt; 2]; 2] {
        [[&self.a - 1, self.b.clone()], [self.c.clone(), &self.d - 1]]
    }

    pub fn det_minus_id(&self) -> BigInt {
        let [[p, q], [r, s]] = self.minus_id();
        p * s - q * r
    }

    /// Entries reduced into `0..n`.
    pub fn residues(&self, n: u64) -> [u64; 4] {
        let n = big(n as i64);
        let r = |x: &BigInt| -> u64 { x.mod_floor(&n).try_into().expect("residue fits") };
        [r(&self.a), r(&self.b), r(&self.c), r(&self.d)]
    }

    pub fn entries(&self) -> [[BigInt; 2]; 2] {
        [[self.a.clone(), self.b.clone()], [self.c.clone(), self.d.clone()]]
    }

    /// Parses `[[a,b],[c,d]]`.
    pub fn parse(s: &str) -> Result<Self> {
        let v: Vec<Vec<i64>> = serde_json::from_str(s.trim()).map_err(|e| Error::Parse(format!("matrix literal: {e}")))?;
        if v.len() != 2 || v.iter().any(|r| r.len() != 2) {
            return Err(Error::Parse("matrix literal must be 2x2".into()));
        }
        Self::from_i64(v[0][0], v[0][1], v[1][0], v[1][1])
    }
}

impl Mul for &ModularMatrix {
    type Output = ModularMatrix;
    fn mul(self, o: &ModularMatrix) -> ModularMatrix {
        ModularMatrix {
            a: &self.a * &o.a + &self.b * &o.c,
            b: &self.a * &o.b + &self.b * &o.d,
            c: &self.c * &o.a + &self.d * &o.c,
            d: &self.c * &o.b + &self.d * &o.d,
        }
    }
}

impl Mul for ModularMatrix {
    type Output = ModularMatrix;
    fn mul(self, o: ModularMatrix) -> ModularMatrix {
        &self * &o
    }
}

impl fmt::Display for ModularMatrix {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "[[{},{}],[{},{}]]", self.a, self.b, self.c, self.d)
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum ElementClass {
    Identity,
    MinusIdentity,
    Elliptic,
    ParabolicUnipotent,
    ParabolicNegative,
    Hyperbolic,
}

pub fn classify(g: &ModularMatrix) -> ElementClass {
    let tr = g.trace();
    if g.is_identity() {
        ElementClass::Identity
    } else if *g == ModularMatrix::minus_identity() {
        ElementClass::MinusIdentity
    } else if tr.abs() < big(2) {
        ElementClass::Elliptic
    } else if tr == big(2) {
        ElementClass::ParabolicUnipotent
    } else if tr == big(-2) {
        ElementClass::ParabolicNegative
    } else {
        ElementClass::Hyperbolic
    }
}

/// Membership in the subgroup `a = d = 1, c = 0 (mod n)`, `b = 0 (mod m)`.
pub fn congruence_member(g: &ModularMatrix, m: u64, n: u64) -> Result<bool> {
    check_level(m, n)?;
    let (mm, nn) = (big(m as i64), big(n as i64));
    let md = |x: &BigInt, k: &BigInt| x.mod_floor(k);
    Ok(md(&(&g.a - 1), &nn).is_zero()
        && md(&(&g.d - 1), &nn).is_zero()
        && md(&g.c, &nn).is_zero()
        && md(&g.b, &mm).is_zero())
}

pub(crate) fn check_level(m: u64, n: u64) -> Result<()> {
    if m == 0 || n == 0 || n % m != 0 {
        return Err(Error::Invalid(format!("need positive m dividing n, got m={m}, n={n}")));
    }
    Ok(())
}

/// Column span of `g - id`.
pub fn image_lattice(g: &ModularMatrix) -> Lattice2 {
    Lattice2::column_span(g.minus_id())
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum Letter {
    X,
    X2,
    Y,
}

impl Letter {
    pub fn matrix(self) -> ModularMatrix {
        match self {
            Letter::X => ModularMatrix::x(),
            Letter::X2 => ModularMatrix::x().pow(2),
            Letter::Y => ModularMatrix::y(),
        }
    }

    fn x_exp(self) -> u8 {
        match self {
            Letter::X => 1,
            Letter::X2 => 2,
            Letter::Y => 0,
        }
    }
}

/// `sign * letters`, letters alternating between `{X, X^2}` and `{Y}`.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct ModularWord {
    pub sign: i8,
    pub letters: Vec<Letter>,
}

impl ModularWord {
    pub fn identity() -> Self {
        ModularWord { sign: 1, letters: Vec::new() }
    }

    /// Normal form of an arbitrary product, using `X^3 = id`, `Y^2 = -id`.
    pub fn normalize(sign: i8, letters: &[Letter]) -> Self {
        let mut sign = sign;
        let mut out: Vec<Letter> = Vec::with_capacity(letters.len());
        for &l in letters {
            push_letter(&mut out, &mut sign, l);
        }
        ModularWord { sign, letters: out }
    }

    pub fn is_normal(&self) -> bool {
        (self.sign == 1 || self.sign == -1)
            && self.letters.windows(2).all(|w| (w[0] == Letter::Y) != (w[1] == Letter::Y))
    }

    pub fn inverse(&self) -> Self {
        // (X)^-1 = X^2, Y^-1 = -Y
        let mut sign = self.sign;
        let mut letters = Vec::with_capacity(self.letters.len());
        for &l in self.letters.iter().rev() {
            letters.push(match l {
                Letter::X => Letter::X2,
                Letter::X2 => Letter::X,
                Letter::Y => {
                    sign = -sign;
                    Letter::Y
                }
            });
        }
        ModularWord::normalize(sign, &letters)
    }

    pub fn concat(&self, other: &ModularWord) -> Self {
        let mut all = self.letters.clone();
        all.extend_from_slice(&other.letters);
        ModularWord::normalize(self.sign * other.sign, &all)
    }

    /// Parses letters `X`, `X2` (or `X^2`, `X^-1`), `Y`, optional leading `-`,
    /// separated by `.` or spaces; `e` or empty is the identity.
    pub fn parse(s: &str) -> Result<Self> {
        let s = s.trim();
        let (sign, body) = match s.strip_prefix('-') {
            Some(rest) => (-1, rest),
            None => (1, s),
        };
        let mut letters = Vec::new();
        for tok in body.split(['.', ' ']).filter(|t| !t.is_empty()) {
            let (base, exp) = split_power(tok)?;
            let l = match base {
                "X" | "x" => match exp.rem_euclid(3) {
                    0 => continue,
                    1 => Letter::X,
                    _ => Letter::X2,
                },
                "Y" | "y" => {
                    // Y^k = (-1)^{k div 2} Y^{k mod 2}; Y^-1 = -Y
                    let k = exp.rem_euclid(4);
                    let (s2, ls): (i8, &[Letter]) = match k {
                        0 => (1, &[]),
                        1 => (1, &[Letter::Y]),
                        2 => (-1, &[]),
                        _ => (-1, &[Letter::Y]),
                    };
                    if s2 < 0 {
                        letters.push(Letter::Y);
                        letters.push(Letter::Y);
                    }
                    letters.extend_from_slice(ls);
                    continue;
                }
                "e" => continue,
                _ => return Err(Error::Parse(format!("unknown modular letter '{tok}'"))),
            };
            letters.push(l);
        }
        Ok(ModularWord::normalize(sign, &letters))
    }
}

fn split_power(tok: &str) -> Result<(&str, i64)> {
    if let Some(i) = tok.find('^') {
        let e = tok[i + 1..].parse::<i64>().map_err(|_| Error::Parse(format!("bad exponent in '{tok}'")))?;
        Ok((&tok[..i], e))
    } else if tok == "X2" || tok == "x2" {
        Ok((&tok[..1], 2))
    } else {
        Ok((tok, 1))
    }
}

fn push_letter(out: &mut Vec<Letter>, sign: &mut i8, l: Letter) {
    match (out.last().copied(), l) {
        (Some(Letter::Y), Letter::Y) => {
            out.pop();
            *sign = -*sign;
        }
        (Some(p), q) if p != Letter::Y && q != Letter::Y => {
            out.pop();
            match (p.x_exp() + q.x_exp()) % 3 {
                0 => {}
                1 => out.push(Letter::X),
                _ => out.push(Letter::X2),
            }
        }
        _ => out.push(l),
    }
}

impl fmt::Display for ModularWord {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.sign < 0 {
            write!(f, "-")?;
        }
        if self.letters.is_empty() {
            return write!(f, "e");
        }
        let parts: Vec<&str> = self
            .letters
            .iter()
            .map(|l| match l {
                Letter::X => "X",
                Letter::X2 => "X^2",
                Letter::Y => "Y",
            })
            .collect();
        write!(f, "{}", parts.join("."))
    }
}

pub fn word_to_matrix(w: &ModularWord) -> ModularMatrix {
    let m = w.letters.iter().fold(ModularMatrix::identity(), |acc, l| &acc * &l.matrix());
    if w.sign < 0 {
        m.neg()
    } else {
        m
    }
}

/// Continued-fraction descent: peel off `T^q` and `Y` until the lower-left
/// entry vanishes, then write the remaining `+-T^k` and normalize.
pub fn matrix_to_word(g: &ModularMatrix) -> ModularWord {
    // T = X Y,  T^-1 = -Y X^2
    let t_pow = |k: &BigInt, out: &mut Vec<Letter>, sign: &mut i8| {
        let n: u64 = k.abs().try_into().expect("exponent fits");
        for _ in 0..n {
            if k.is_positive() {
                out.extend([Letter::X, Letter::Y]);
            } else {
                *sign = -*sign;
                out.extend([Letter::Y, Letter::X2]);
            }
        }
    };
    let mut letters: Vec<Letter> = Vec::new();
    let mut sign: i8 = 1;
    let mut h = g.clone();
    while !h.c.is_zero() {
        // h = T^q Y h'
        let q = round_div(&h.a, &h.c);
        t_pow(&q, &mut letters, &mut sign);
        letters.push(Letter::Y);
        let tq = ModularMatrix::t().pow(q.try_into().expect("quotient fits"));
        h = &(&ModularMatrix::y().inverse() * &tq.inverse()) * &h;
    }
    // h = +-T^b
    if h.a.is_negative() {
        sign = -sign;
        h = h.neg();
    }
    t_pow(&h.b, &mut letters, &mut sign);
    let w = ModularWord::normalize(sign, &letters);
    debug_assert_eq!(word_to_matrix(&w), *g);
    w
}

fn round_div(a: &BigInt, c: &BigInt) -> BigInt {
    // nearest integer to a/c
    let two = big(2);
    let num = a * &two + c;
    num.div_floor(&(c * &two))
}

#[cfg(test)]
mod tests {
    use super::*;

    fn m(a: i64, b: i64, c: i64, d: i64) -> ModularMatrix {
        ModularMatrix::from_i64(a, b, c, d).unwrap()
    }

    #[test]
    fn generator_relations() {
        assert!(ModularMatrix::x().pow(3).is_identity());
        assert_eq!(ModularMatrix::y().pow(2), ModularMatrix::minus_identity());
        assert_eq!(&ModularMatrix::x() * &ModularMatrix::y(), ModularMatrix::t());
        assert!(ModularMatrix::from_i64(1, 1, 1, 1).is_err());
    }

    #[test]
    fn classify_examples() {
        assert_eq!(classify(&ModularMatrix::identity()), ElementClass::Identity);
        assert_eq!(classify(&m(1, 1, 0, 1)), ElementClass::ParabolicUnipotent);
        assert_eq!(classify(&ModularMatrix::x()), ElementClass::Elliptic);
        assert_eq!(classify(&m(-1, 3, 0, -1)), ElementClass::ParabolicNegative);
        assert_eq!(classify(&m(2, 1, 1, 1)), ElementClass::Hyperbolic);
    }

    #[test]
    fn congruence_examples() {
        assert!(congruence_member(&ModularMatrix::identity(), 3, 6).unwrap());
        assert!(congruence_member(&m(1, 1, 0, 1), 1, 4).unwrap());
        assert!(!congruence_member(&m(1, 1, 0, 1), 2, 4).unwrap());
        assert!(!congruence_member(&ModularMatrix::minus_identity(), 1, 3).unwrap());
        assert!(congruence_member(&ModularMatrix::identity(), 2, 3).is_err());
    }

    #[test]
    fn image_lattice_examples() {
        use crate::exact::{quotient_of, FinAbGroup};
        assert_eq!(quotient_of(&image_lattice(&ModularMatrix::minus_identity())), FinAbGroup::from_small(0, &[2, 2]));
        assert_eq!(quotient_of(&image_lattice(&ModularMatrix::x().neg())), FinAbGroup::trivial());
        assert_eq!(quotient_of(&image_lattice(&ModularMatrix::y().neg())), FinAbGroup::from_small(0, &[2]));
    }

    #[test]
    fn word_examples() {
        assert_eq!(matrix_to_word(&ModularMatrix::identity()), ModularWord::identity());
        assert_eq!(matrix_to_word(&m(1, 1, 0, 1)), ModularWord { sign: 1, letters: vec![Letter::X, Letter::Y] });
        assert_eq!(matrix_to_word(&m(0, 1, -1, 1)), ModularWord { sign: -1, letters: vec![Letter::X2] });
        assert_eq!(ModularWord::parse("X.Y").unwrap(), ModularWord { sign: 1, letters: vec![Letter::X, Letter::Y] });
        assert_eq!(ModularWord::parse("Y.Y").unwrap(), ModularWord { sign: -1, letters: vec![] });
        let g = m(5, 2, 7, 3);
        let w = matrix_to_word(&g);
        assert!(w.is_normal());
        assert_eq!(word_to_matrix(&w), g);
        assert_eq!(ModularMatrix::parse("[[1,1],[0,1]]").unwrap(), m(1, 1, 0, 1));
    }
}
