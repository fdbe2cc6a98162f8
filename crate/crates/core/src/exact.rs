//! Exact integer and Laurent-polynomial linear algebra.
//!
//! Everything here is arbitrary precision. The pieces are small: dense
//! integer matrices with a Smith form, sublattices of Z^2 kept in Hermite
//! form, finitely generated abelian groups, and Laurent polynomials over Z.

use std::collections::BTreeMap;
use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Signed, ToPrimitive, Zero};

pub fn big(v: i64) -> BigInt {
    BigInt::from(v)
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct IntMat {
    rows: usize,
    cols: usize,
    data: Vec<BigInt>,
}

impl IntMat {
    pub fn zeros(rows: usize, cols: usize) -> Self {
        IntMat { rows, cols, data: vec![BigInt::zero(); rows * cols] }
    }

    pub fn identity(n: usize) -> Self {
        let mut m = Self::zeros(n, n);
        for i in 0..n {
            m.set(i, i, BigInt::one());
        }
        m
    }

    /// Builds from rows; all rows must have the same length.
    pub fn from_rows<T: Into<BigInt> + Clone>(rows: &[Vec<T>]) -> Self {
        let r = rows.len();
        let c = rows.first().map_or(0, |x| x.len());
        let mut m = Self::zeros(r, c);
        for (i, row) in rows.iter().enumerate() {
            assert_eq!(row.len(), c, "ragged matrix");
            for (j, v) in row.iter().enumerate() {
                m.set(i, j, v.clone().into());
            }
        }
        m
    }

    /// Builds a matrix whose columns are the given vectors.
    pub fn from_cols(rows: usize, cols: &[Vec<BigInt>]) -> Self {
        let mut m = Self::zeros(rows, cols.len());
        for (j, col) in cols.iter().enumerate() {
            assert_eq!(col.len(), rows);
            for (i, v) in col.iter().enumerate() {
                m.set(i, j, v.clone());
            }
        }
        m
    }

    pub fn rows(&self) -> usize {
        self.rows
    }

    pub fn cols(&self) -> usize {
        self.cols
    }

    pub fn get(&self, i: usize, j: usize) -> &BigInt {
        &self.data[i * self.cols + j]
    }

    pub fn set(&mut self, i: usize, j: usize, v: BigInt) {
        self.data[i * self.cols + j] = v;
    }

    pub fn to_rows(&self) -> Vec<Vec<BigInt>> {
        (0..self.rows).map(|i| self.data[i * self.cols..(i + 1) * self.cols].to_vec()).collect()
    }

    pub fn transpose(&self) -> Self {
        let mut m = Self::zeros(self.cols, self.rows);
        for i in 0..self.rows {
            for j in 0..self.cols {
                m.set(j, i, self.get(i, j).clone());
            }
        }
        m
    }

    pub fn mul(&self, other: &IntMat) -> IntMat {
        assert_eq!(self.cols, other.rows);
        let mut m = Self::zeros(self.rows, other.cols);
        for i in 0..self.rows {
            for k in 0..self.cols {
                let a = self.get(i, k);
                if a.is_zero() {
                    continue;
                }
                for j in 0..other.cols {
                    let v = m.get(i, j) + a * other.get(k, j);
                    m.set(i, j, v);
                }
            }
        }
        m
    }
}

/// Nonzero diagonal of the Smith form, `d1 | d2 | ... | dr` with `r` the rank.
pub fn smith_normal_form(m: &IntMat) -> Vec<BigInt> {
    let mut a = m.to_rows();
    let (r, c) = (m.rows, m.cols);
    let mut diag = Vec::new();
    for t in 0..r.min(c) {
        // global minimum of the remaining block as first pivot
        let mut best: Option<(usize, usize)> = None;
        for (i, row) in a.iter().enumerate().skip(t) {
            for (j, v) in row.iter().enumerate().skip(t) {
                if !v.is_zero() && best.map_or(true, |(bi, bj)| v.abs() < a[bi][bj].abs()) {
                    best = Some((i, j));
                }
            }
        }
        let Some((pi, pj)) = best else { break };
        a.swap(t, pi);
        swap_cols(&mut a, t, pj, t);
        loop {
            let mut clean = true;
            for i in t + 1..r {
                if a[i][t].is_zero() {
                    continue;
                }
                let q = &a[i][t] / &a[t][t];
                row_axpy(&mut a, i, t, &q, t);
                if !a[i][t].is_zero() {
                    clean = false;
                }
            }
            for j in t + 1..c {
                if a[t][j].is_zero() {
                    continue;
                }
                let q = &a[t][j] / &a[t][t];
                col_axpy(&mut a, j, t, &q, t);
                if !a[t][j].is_zero() {
                    clean = false;
                }
            }
            if clean {
                let p = a[t][t].clone();
                let bad = (t + 1..r).find(|&i| (t + 1..c).any(|j| !(&a[i][j] % &p).is_zero()));
                match bad {
                    None => break,
                    Some(i) => {
                        let (head, tail) = a.split_at_mut(i);
                        for (x, y) in head[t].iter_mut().zip(tail[0].iter()).skip(t) {
                            *x += y;
                        }
                        continue;
                    }
                }
            }
            // move the smallest entry of row/column t onto the pivot
            let mut bi = (t, t);
            for i in t + 1..r {
                if !a[i][t].is_zero() && a[i][t].abs() < a[bi.0][bi.1].abs() {
                    bi = (i, t);
                }
            }
            for j in t + 1..c {
                if !a[t][j].is_zero() && a[t][j].abs() < a[bi.0][bi.1].abs() {
                    bi = (t, j);
                }
            }
            if bi.0 != t {
                a.swap(t, bi.0);
            } else if bi.1 != t {
                swap_cols(&mut a, t, bi.1, t);
            }
        }
        diag.push(a[t][t].abs());
    }
    diag
}

fn swap_cols(a: &mut [Vec<BigInt>], j1: usize, j2: usize, from_row: usize) {
    if j1 == j2 {
        return;
    }
    for row in a.iter_mut().skip(from_row) {
        row.swap(j1, j2);
    }
}

// row[i] -= q * row[t]
fn row_axpy(a: &mut [Vec<BigInt>], i: usize, t: usize, q: &BigInt, from: usize) {
    let (src, dst) = if i > t {
        let (h, tl) = a.split_at_mut(i);
        (&h[t], &mut tl[0])
    } else {
        let (h, tl) = a.split_at_mut(t);
        (&tl[0], &mut h[i])
    };
    for (d, s) in dst.iter_mut().zip(src.iter()).skip(from) {
        if !s.is_zero() {
            *d -= q * s;
        }
    }
}

// col[j] -= q * col[t]
fn col_axpy(a: &mut [Vec<BigInt>], j: usize, t: usize, q: &BigInt, from: usize) {
    for row in a.iter_mut().skip(from) {
        if !row[t].is_zero() {
            let v = q * &row[t];
            row[j] -= v;
        }
    }
}

/// Sublattice of Z^2 in column Hermite form.
///
/// Rank 2: columns `(h11, 0)` and `(h12, h22)` with `h11, h22 > 0` and
/// `0 <= h12 < h11`. Rank 1: one primitive-direction generator whose first
/// nonzero coordinate is positive. Rank 0: nothing.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct Lattice2 {
    gens: Vec<[BigInt; 2]>,
}

impl Lattice2 {
    pub fn zero() -> Self {
        Lattice2 { gens: Vec::new() }
    }

    pub fn full() -> Self {
        Self::from_vectors(&[[big(1), big(0)], [big(0), big(1)]])
    }

    pub fn rank(&self) -> usize {
        self.gens.len()
    }

    /// Hermite basis as columns.
    pub fn generators(&self) -> &[[BigInt; 2]] {
        &self.gens
    }

    /// Index in Z^2 for full-rank lattices.
    pub fn index(&self) -> Option<BigInt> {
        (self.rank() == 2).then(|| &self.gens[0][0] * &self.gens[1][1])
    }

    pub fn from_vectors(vs: &[[BigInt; 2]]) -> Self {
        // fold the second coordinates into a single column by extended gcd
        let mut pivot: Option<[BigInt; 2]> = None;
        let mut firsts: Vec<BigInt> = Vec::new();
        for v in vs {
            if v[1].is_zero() {
                firsts.push(v[0].clone());
                continue;
            }
            match pivot.take() {
                None => pivot = Some(v.clone()),
                Some(p) => {
                    let e = p[1].extended_gcd(&v[1]);
                    let g = e.gcd.clone();
                    let np = [&e.x * &p[0] + &e.y * &v[0], g.clone()];
                    // remaining combination has zero second coordinate
                    let kp = &v[1] / &g;
                    let kv = &p[1] / &g;
                    firsts.push(&kp * &p[0] - &kv * &v[0]);
                    pivot = Some(np);
                }
            }
        }
        let h11 = firsts.iter().fold(BigInt::zero(), |acc, x| acc.gcd(x));
        match pivot {
            None if h11.is_zero() => Lattice2::zero(),
            None => Lattice2 { gens: vec![[h11, BigInt::zero()]] },
            Some(mut p) => {
                if p[1].is_negative() {
                    p = [-&p[0], -&p[1]];
                }
                if h11.is_zero() {
                    Lattice2 { gens: vec![p] }
                } else {
                    let h12 = p[0].mod_floor(&h11);
                    Lattice2 { gens: vec![[h11, BigInt::zero()], [h12, p[1].clone()]] }
                }
            }
        }
    }

    /// Column span of a 2x2 matrix given row-major.
    pub fn column_span(m: [[BigInt; 2]; 2]) -> Self {
        let [[a, b], [c, d]] = m;
        Self::from_vectors(&[[a, c], [b, d]])
    }

    pub fn contains(&self, v: &[BigInt; 2]) -> bool {
        let mut vs = self.gens.clone();
        vs.push(v.clone());
        Lattice2::from_vectors(&vs) == *self
    }

    pub fn smith(&self) -> Vec<BigInt> {
        let cols: Vec<Vec<BigInt>> = self.gens.iter().map(|g| g.to_vec()).collect();
        if cols.is_empty() {
            return Vec::new();
        }
        smith_normal_form(&IntMat::from_cols(2, &cols))
    }
}

/// Smallest sublattice containing every input.
pub fn lattice_sum(ls: &[Lattice2]) -> Lattice2 {
    let vs: Vec<[BigInt; 2]> = ls.iter().flat_map(|l| l.gens.iter().cloned()).collect();
    Lattice2::from_vectors(&vs)
}

/// Z^2 / L.
pub fn quotient_of(l: &Lattice2) -> FinAbGroup {
    FinAbGroup::from_smith(2, &l.smith())
}

/// Finitely generated abelian group `Z^free_rank + Z/d1 + ... + Z/dk`,
/// `d1 | d2 | ...`, all `di >= 2`.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct FinAbGroup {
    pub free_rank: usize,
    pub factors: Vec<BigInt>,
}

impl FinAbGroup {
    pub fn trivial() -> Self {
        FinAbGroup { free_rank: 0, factors: Vec::new() }
    }

    pub fn free(rank: usize) -> Self {
        FinAbGroup { free_rank: rank, factors: Vec::new() }
    }

    /// Any list of cyclic orders; zeros count as free summands.
    pub fn from_cyclic<I: IntoIterator<Item = BigInt>>(orders: I) -> Self {
        let mut free_rank = 0;
        let mut fs: Vec<BigInt> = Vec::new();
        for o in orders {
            let o = o.abs();
            if o.is_zero() {
                free_rank += 1;
            } else if !o.is_one() {
                fs.push(o);
            }
        }
        for i in 0..fs.len() {
            for j in i + 1..fs.len() {
                let g = fs[i].gcd(&fs[j]);
                let l = &fs[i] / &g * &fs[j];
                fs[i] = g;
                fs[j] = l;
            }
        }
        fs.retain(|x| !x.is_one());
        FinAbGroup { free_rank, factors: fs }
    }

    pub fn from_small(free_rank: usize, factors: &[i64]) -> Self {
        let mut g = Self::from_cyclic(factors.iter().map(|&f| big(f)));
        g.free_rank += free_rank;
        g
    }

    /// Cokernel of a matrix with `ngens` rows given its Smith diagonal.
    pub fn from_smith(ngens: usize, diag: &[BigInt]) -> Self {
        let nonzero: Vec<BigInt> = diag.iter().filter(|d| !d.is_zero()).cloned().collect();
        let mut g = Self::from_cyclic(nonzero.iter().cloned());
        g.free_rank = ngens - nonzero.len();
        g
    }

    pub fn is_finite(&self) -> bool {
        self.free_rank == 0
    }

    pub fn is_trivial(&self) -> bool {
        self.free_rank == 0 && self.factors.is_empty()
    }

    pub fn order(&self) -> Option<BigInt> {
        self.is_finite().then(|| self.factors.iter().fold(BigInt::one(), |a, b| a * b))
    }

    /// Number of even invariant factors, i.e. the 2-rank of a finite group.
    pub fn two_rank(&self) -> usize {
        self.factors.iter().filter(|f| f.is_even()).count()
    }

    /// Whether `self` is a quotient of `other` (both finite): aligned from the
    /// top, every factor of `self` divides the matching factor of `other`.
    pub fn is_quotient_of(&self, other: &FinAbGroup) -> bool {
        if !self.is_finite() || !other.is_finite() {
            return false;
        }
        if self.factors.len() > other.factors.len() {
            return false;
        }
        self.factors.iter().rev().zip(other.factors.iter().rev()).all(|(q, t)| t.is_multiple_of(q))
    }

    pub fn surjects_onto_cyclic(&self, p: i64) -> bool {
        self.free_rank > 0 || self.factors.iter().any(|f| f.is_multiple_of(&big(p)))
    }

    pub fn factors_u64(&self) -> Vec<u64> {
        self.factors.iter().map(|f| f.to_u64().expect("invariant factor fits u64")).collect()
    }
}

impl fmt::Display for FinAbGroup {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let mut parts = Vec::new();
        match self.free_rank {
            0 => {}
            1 => parts.push("Z".to_string()),
            r => parts.push(format!("Z^{r}")),
        }
        parts.extend(self.factors.iter().map(|d| format!("Z/{d}")));
        if parts.is_empty() {
            write!(f, "0")
        } else {
            write!(f, "{}", parts.join(" + "))
        }
    }
}

/// Laurent polynomial in `t` with integer coefficients.
#[derive(Clone, Debug, Default, PartialEq, Eq, Hash)]
pub struct LaurentPoly {
    terms: BTreeMap<i64, BigInt>,
}

impl LaurentPoly {
    pub fn zero() -> Self {
        Self::default()
    }

    pub fn one() -> Self {
        Self::monomial(big(1), 0)
    }

    pub fn t() -> Self {
        Self::monomial(big(1), 1)
    }

    pub fn monomial(c: BigInt, e: i64) -> Self {
        let mut terms = BTreeMap::new();
        if !c.is_zero() {
            terms.insert(e, c);
        }
        LaurentPoly { terms }
    }

    /// Coefficients listed from exponent `low` upward.
    pub fn from_coeffs(low: i64, coeffs: &[i64]) -> Self {
        let mut p = Self::zero();
        for (k, &c) in coeffs.iter().enumerate() {
            p.add_term(low + k as i64, big(c));
        }
        p
    }

    pub fn constant(c: i64) -> Self {
        Self::monomial(big(c), 0)
    }

    fn add_term(&mut self, e: i64, c: BigInt) {
        if c.is_zero() {
            return;
        }
        let entry = self.terms.entry(e).or_insert_with(BigInt::zero);
        *entry += c;
        if entry.is_zero() {
            self.terms.remove(&e);
        }
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn coeff(&self, e: i64) -> BigInt {
        self.terms.get(&e).cloned().unwrap_or_default()
    }

    pub fn terms(&self) -> impl Iterator<Item = (i64, &BigInt)> {
        self.terms.iter().map(|(e, c)| (*e, c))
    }

    pub fn min_exp(&self) -> Option<i64> {
        self.terms.keys().next().copied()
    }

    pub fn max_exp(&self) -> Option<i64> {
        self.terms.keys().next_back().copied()
    }

    /// Width of the support, the degree of the normalized representative.
    pub fn span(&self) -> Option<i64> {
        Some(self.max_exp()? - self.min_exp()?)
    }

    pub fn shift(&self, k: i64) -> Self {
        LaurentPoly { terms: self.terms.iter().map(|(e, c)| (e + k, c.clone())).collect() }
    }

    pub fn scale(&self, c: &BigInt) -> Self {
        if c.is_zero() {
            return Self::zero();
        }
        LaurentPoly { terms: self.terms.iter().map(|(e, x)| (*e, x * c)).collect() }
    }

    pub fn content(&self) -> BigInt {
        self.terms.values().fold(BigInt::zero(), |a, c| a.gcd(c))
    }

    /// Representative up to units: lowest exponent 0, positive leading coefficient.
    pub fn normalized(&self) -> Self {
        let Some(lo) = self.min_exp() else { return Self::zero() };
        let p = self.shift(-lo);
        if p.terms.values().next_back().is_some_and(|c| c.is_negative()) {
            -p
        } else {
            p
        }
    }

    /// Normalized and divided by its content.
    pub fn primitive(&self) -> Self {
        if self.is_zero() {
            return Self::zero();
        }
        let c = self.content();
        let n = self.normalized();
        LaurentPoly { terms: n.terms.into_iter().map(|(e, x)| (e, x / &c)).collect() }
    }

    /// Value at `t = x` for `x = 1` or `x = -1`.
    pub fn eval_unit(&self, x: i64) -> BigInt {
        assert!(x == 1 || x == -1);
        self.terms.iter().fold(BigInt::zero(), |acc, (e, c)| if x == -1 && e.rem_euclid(2) == 1 { acc - c } else { acc + c })
    }

    /// `t -> t^{-1}`.
    pub fn bar(&self) -> Self {
        LaurentPoly { terms: self.terms.iter().map(|(e, c)| (-e, c.clone())).collect() }
    }

    fn dense(&self) -> Vec<BigInt> {
        let n = self.normalized_shift_only();
        let Some(hi) = n.max_exp() else { return Vec::new() };
        (0..=hi).map(|e| n.coeff(e)).collect()
    }

    fn normalized_shift_only(&self) -> Self {
        match self.min_exp() {
            Some(lo) => self.shift(-lo),
            None => Self::zero(),
        }
    }

    fn from_dense(v: &[BigInt]) -> Self {
        let mut p = Self::zero();
        for (e, c) in v.iter().enumerate() {
            p.add_term(e as i64, c.clone());
        }
        p
    }

    /// Exact quotient over the integers if `d` divides `self` in Z[t, 1/t].
    pub fn div_exact(&self, d: &LaurentPoly) -> Option<LaurentPoly> {
        if d.is_zero() {
            return None;
        }
        if self.is_zero() {
            return Some(Self::zero());
        }
        let (lo_a, lo_d) = (self.min_exp()?, d.min_exp()?);
        let mut a = self.dense();
        let b = d.dense();
        if a.len() < b.len() {
            return None;
        }
        let lead = b.last()?.clone();
        let mut q = vec![BigInt::zero(); a.len() - b.len() + 1];
        for k in (0..q.len()).rev() {
            let top = &a[k + b.len() - 1];
            if top.is_zero() {
                continue;
            }
            if !top.is_multiple_of(&lead) {
                return None;
            }
            let c = top / &lead;
            for (i, bi) in b.iter().enumerate() {
                a[k + i] -= &c * bi;
            }
            q[k] = c;
        }
        if a.iter().any(|x| !x.is_zero()) {
            return None;
        }
        Some(Self::from_dense(&q).shift(lo_a - lo_d))
    }

    /// Divisibility over the rationals.
    pub fn divides(&self, other: &LaurentPoly) -> bool {
        if self.is_zero() {
            return other.is_zero();
        }
        let b = self.dense();
        let r = prem(&other.dense(), &b);
        r.iter().all(|x| x.is_zero())
    }

    /// Number of times `f` (nonconstant) divides `self` over the rationals.
    pub fn multiplicity(&self, f: &LaurentPoly) -> usize {
        assert!(f.span().unwrap_or(0) > 0, "multiplicity of a unit is undefined");
        if self.is_zero() {
            return usize::MAX;
        }
        let fp = f.primitive();
        let mut p = self.primitive();
        let mut k = 0;
        while let Some(q) = p.div_exact(&fp) {
            p = q.primitive();
            k += 1;
        }
        k
    }

    pub fn cyclotomic(m: u64) -> LaurentPoly {
        assert!(m >= 1);
        let mut p = LaurentPoly::monomial(big(1), m as i64) - LaurentPoly::one();
        for d in 1..m {
            if m % d == 0 {
                p = p.div_exact(&Self::cyclotomic(d)).expect("cyclotomic division");
            }
        }
        p
    }

    pub fn pow(&self, k: u32) -> Self {
        (0..k).fold(Self::one(), |acc, _| &acc * self)
    }
}

// pseudo-remainder of a by b (dense, ascending coefficients)
fn prem(a: &[BigInt], b: &[BigInt]) -> Vec<BigInt> {
    let mut r: Vec<BigInt> = a.to_vec();
    trim(&mut r);
    let db = b.len() - 1;
    let lead = b[db].clone();
    while r.len() > db && !r.is_empty() {
        let k = r.len() - 1 - db;
        let top = r.last().unwrap().clone();
        for x in r.iter_mut() {
            *x *= &lead;
        }
        for (i, bi) in b.iter().enumerate() {
            r[k + i] -= &top * bi;
        }
        trim(&mut r);
        let c = r.iter().fold(BigInt::zero(), |acc, x| acc.gcd(x));
        if !c.is_zero() && !c.is_one() {
            for x in r.iter_mut() {
                *x /= &c;
            }
        }
    }
    r
}

fn trim(v: &mut Vec<BigInt>) {
    while v.last().is_some_and(|x| x.is_zero()) {
        v.pop();
    }
}

/// Greatest common divisor over the rationals, made primitive and normalized.
/// The gcd of an all-zero list is zero.
pub fn laurent_gcd(ps: &[LaurentPoly]) -> LaurentPoly {
    let mut g: Option<Vec<BigInt>> = None;
    for p in ps.iter().filter(|p| !p.is_zero()) {
        let d = p.primitive().dense();
        g = Some(match g {
            None => d,
            Some(acc) => poly_gcd(acc, d),
        });
        if g.as_ref().is_some_and(|v| v.len() == 1) {
            break;
        }
    }
    match g {
        None => LaurentPoly::zero(),
        Some(v) => LaurentPoly::from_dense(&v).primitive(),
    }
}

fn poly_gcd(mut a: Vec<BigInt>, mut b: Vec<BigInt>) -> Vec<BigInt> {
    if a.len() < b.len() {
        std::mem::swap(&mut a, &mut b);
    }
    while !b.is_empty() {
        let r = prem(&a, &b);
        a = b;
        b = LaurentPoly::from_dense(&r).primitive().dense();
        if r.iter().all(|x| x.is_zero()) {
            b = Vec::new();
        }
    }
    LaurentPoly::from_dense(&a).primitive().dense()
}

impl Add for &LaurentPoly {
    type Output = LaurentPoly;
    fn add(self, o: &LaurentPoly) -> LaurentPoly {
        let mut r = self.clone();
        for (e, c) in &o.terms {
            r.add_term(*e, c.clone());
        }
        r
    }
}

impl Sub for &LaurentPoly {
    type Output = LaurentPoly;
    fn sub(self, o: &LaurentPoly) -> LaurentPoly {
        let mut r = self.clone();
        for (e, c) in &o.terms {
            r.add_term(*e, -c);
        }
        r
    }
}

impl Mul for &LaurentPoly {
    type Output = LaurentPoly;
    fn mul(self, o: &LaurentPoly) -> LaurentPoly {
        let mut r = LaurentPoly::zero();
        for (e1, c1) in &self.terms {
            for (e2, c2) in &o.terms {
                r.add_term(e1 + e2, c1 * c2);
            }
        }
        r
    }
}

impl Neg for LaurentPoly {
    type Output = LaurentPoly;
    fn neg(self) -> LaurentPoly {
        LaurentPoly { terms: self.terms.into_iter().map(|(e, c)| (e, -c)).collect() }
    }
}

macro_rules! forward_owned {
    ($tr:ident, $m:ident) => {
        impl $tr for LaurentPoly {
            type Output = LaurentPoly;
            fn $m(self, o: LaurentPoly) -> LaurentPoly {
                (&self).$m(&o)
            }
        }
    };
}
forward_owned!(Add, add);
forward_owned!(Sub, sub);
forward_owned!(Mul, mul);

impl fmt::Display for LaurentPoly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_zero() {
            return write!(f, "0");
        }
        let mut first = true;
        for (e, c) in self.terms.iter().rev() {
            let neg = c.is_negative();
            let a = c.abs();
            if first {
                if neg {
                    write!(f, "-")?;
                }
            } else {
                write!(f, " {} ", if neg { '-' } else { '+' })?;
            }
            first = false;
            let mono = match *e {
                0 => String::new(),
                1 => "t".into(),
                k => format!("t^{k}"),
            };
            if mono.is_empty() {
                write!(f, "{a}")?;
            } else if a.is_one() {
                write!(f, "{mono}")?;
            } else {
                write!(f, "{a}*{mono}")?;
            }
        }
        Ok(())
    }
}
