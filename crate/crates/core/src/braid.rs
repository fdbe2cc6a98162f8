//! The braid group B3 acting on the free group <a1, a2, a3>.
//!
//! Composition is leftmost-outermost: `(bc)(w) = b(c(w))`.

use std::collections::{HashMap, VecDeque};
use std::fmt;

use crate::exact::LaurentPoly;
use crate::modular::{check_level, matrix_to_word, Letter, ModularMatrix, ModularWord};
use crate::{Error, Result};

/// Freely reduced word in `a1, a2, a3`; letters are `+-1, +-2, +-3`.
#[derive(Clone, Debug, Default, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct FreeWord {
    letters: Vec<i8>,
}

impl FreeWord {
    pub fn new(letters: &[i8]) -> Self {
        let mut w = FreeWord::default();
        for &l in letters {
            assert!(l != 0 && l.abs() <= 3, "free generator index out of range");
            w.push(l);
        }
        w
    }

    pub fn identity() -> Self {
        Self::default()
    }

    pub fn gen(i: i8) -> Self {
        Self::new(&[i])
    }

    /// `a1 a2 a3`.
    pub fn rho() -> Self {
        Self::new(&[1, 2, 3])
    }

    fn push(&mut self, l: i8) {
        if self.letters.last() == Some(&-l) {
            self.letters.pop();
        } else {
            self.letters.push(l);
        }
    }

    pub fn letters(&self) -> &[i8] {
        &self.letters
    }

    pub fn len(&self) -> usize {
        self.letters.len()
    }

    pub fn is_empty(&self) -> bool {
        self.letters.is_empty()
    }

    /// Exponent sum.
    pub fn degree(&self) -> i64 {
        self.letters.iter().map(|&l| if l > 0 { 1 } else { -1 }).sum()
    }

    /// Exponent sum of each generator.
    pub fn exponent_sums(&self) -> [i64; 3] {
        let mut s = [0; 3];
        for &l in &self.letters {
            s[(l.unsigned_abs() - 1) as usize] += l.signum() as i64;
        }
        s
    }

    pub fn inverse(&self) -> Self {
        FreeWord { letters: self.letters.iter().rev().map(|l| -l).collect() }
    }

    pub fn concat(&self, other: &FreeWord) -> Self {
        let mut w = self.clone();
        for &l in &other.letters {
            w.push(l);
        }
        w
    }

    pub fn pow(&self, k: i64) -> Self {
        let base = if k < 0 { self.inverse() } else { self.clone() };
        (0..k.unsigned_abs()).fold(FreeWord::identity(), |acc, _| acc.concat(&base))
    }

    /// `g self g^-1`.
    pub fn conjugate(&self, g: &FreeWord) -> Self {
        g.concat(self).concat(&g.inverse())
    }

    pub fn parse(s: &str) -> Result<Self> {
        let mut w = FreeWord::identity();
        for (base, e) in tokens(s)? {
            let i: i8 = match base {
                "a1" => 1,
                "a2" => 2,
                "a3" => 3,
                _ => return Err(Error::Parse(format!("unknown free generator '{base}'"))),
            };
            w = w.concat(&FreeWord::gen(i).pow(e));
        }
        Ok(w)
    }
}

fn tokens(s: &str) -> Result<Vec<(&str, i64)>> {
    let s = s.trim();
    if s.is_empty() || s == "e" || s == "1" {
        return Ok(Vec::new());
    }
    s.split(['.', ' '])
        .filter(|t| !t.is_empty())
        .map(|t| match t.split_once('^') {
            Some((b, e)) => {
                let e = e.parse::<i64>().map_err(|_| Error::Parse(format!("bad exponent in '{t}'")))?;
                Ok((b, e))
            }
            None => Ok((t, 1)),
        })
        .collect()
}

fn write_runs(f: &mut fmt::Formatter<'_>, letters: &[i8], prefix: &str) -> fmt::Result {
    if letters.is_empty() {
        return write!(f, "e");
    }
    let mut parts = Vec::new();
    let mut i = 0;
    while i < letters.len() {
        let g = letters[i].abs();
        let mut e: i64 = 0;
        while i < letters.len() && letters[i].abs() == g {
            e += letters[i].signum() as i64;
            i += 1;
        }
        if e != 0 {
            parts.push(if e == 1 { format!("{prefix}{g}") } else { format!("{prefix}{g}^{e}") });
        }
    }
    if parts.is_empty() {
        write!(f, "e")
    } else {
        write!(f, "{}", parts.join("."))
    }
}

impl fmt::Display for FreeWord {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write_runs(f, &self.letters, "a")
    }
}

/// Word in `s1^{+-1}, s2^{+-1}`, kept freely reduced.
#[derive(Clone, Debug, Default, PartialEq, Eq, Hash)]
pub struct BraidWord {
    letters: Vec<i8>,
}

impl BraidWord {
    pub fn new(letters: &[i8]) -> Self {
        let mut b = BraidWord::default();
        for &l in letters {
            assert!(l == 1 || l == -1 || l == 2 || l == -2, "braid letter out of range");
            b.push(l);
        }
        b
    }

    pub fn identity() -> Self {
        Self::default()
    }

    pub fn s1() -> Self {
        Self::new(&[1])
    }

    pub fn s2() -> Self {
        Self::new(&[2])
    }

    fn push(&mut self, l: i8) {
        if self.letters.last() == Some(&-l) {
            self.letters.pop();
        } else {
            self.letters.push(l);
        }
    }

    pub fn letters(&self) -> &[i8] {
        &self.letters
    }

    pub fn len(&self) -> usize {
        self.letters.len()
    }

    pub fn is_empty(&self) -> bool {
        self.letters.is_empty()
    }

    pub fn degree(&self) -> i64 {
        self.letters.iter().map(|&l| if l > 0 { 1 } else { -1 }).sum()
    }

    pub fn inverse(&self) -> Self {
        BraidWord { letters: self.letters.iter().rev().map(|l| -l).collect() }
    }

    pub fn concat(&self, other: &BraidWord) -> Self {
        let mut b = self.clone();
        for &l in &other.letters {
            b.push(l);
        }
        b
    }

    pub fn pow(&self, k: i64) -> Self {
        let base = if k < 0 { self.inverse() } else { self.clone() };
        (0..k.unsigned_abs()).fold(BraidWord::identity(), |acc, _| acc.concat(&base))
    }

    /// `h self h^-1`.
    pub fn conjugate(&self, h: &BraidWord) -> Self {
        h.concat(self).concat(&h.inverse())
    }

    pub fn product<'a, I: IntoIterator<Item = &'a BraidWord>>(it: I) -> Self {
        it.into_iter().fold(BraidWord::identity(), |acc, b| acc.concat(b))
    }

    pub fn parse(s: &str) -> Result<Self> {
        let mut b = BraidWord::identity();
        for (base, e) in tokens(s)? {
            let g = match base {
                "s1" => BraidWord::s1(),
                "s2" => BraidWord::s2(),
                _ => return Err(Error::Parse(format!("unknown braid generator '{base}'"))),
            };
            b = b.concat(&g.pow(e));
        }
        Ok(b)
    }
}

impl fmt::Display for BraidWord {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write_runs(f, &self.letters, "s")
    }
}

/// `u = s2 s1`; `u^3` generates the center.
pub fn u() -> BraidWord {
    BraidWord::new(&[2, 1])
}

/// `v = s2 s1^2`.
pub fn v() -> BraidWord {
    BraidWord::new(&[2, 1, 1])
}

fn letter_image(s: i8, g: i8) -> &'static [i8] {
    match (s, g) {
        (1, 1) => &[1, 2, -1],
        (1, 2) => &[1],
        (-1, 1) => &[2],
        (-1, 2) => &[-2, 1, 2],
        (2, 2) => &[2, 3, -2],
        (2, 3) => &[2],
        (-2, 2) => &[3],
        (-2, 3) => &[-3, 2, 3],
        (_, 1) => &[1],
        (_, 2) => &[2],
        _ => &[3],
    }
}

fn apply_letter(s: i8, w: &FreeWord) -> FreeWord {
    let mut out = FreeWord::identity();
    for &l in &w.letters {
        let img = letter_image(s, l.abs());
        if l > 0 {
            for &x in img {
                out.push(x);
            }
        } else {
            for &x in img.iter().rev() {
                out.push(-x);
            }
        }
    }
    out
}

/// Image of `w` under the automorphism `b`.
pub fn artin_apply(b: &BraidWord, w: &FreeWord) -> FreeWord {
    b.letters.iter().rev().fold(w.clone(), |acc, &s| apply_letter(s, &acc))
}

/// Images of `a1, a2, a3`.
pub fn artin_images(b: &BraidWord) -> [FreeWord; 3] {
    [1, 2, 3].map(|i| artin_apply(b, &FreeWord::gen(i)))
}

pub fn braid_to_sl2(b: &BraidWord) -> ModularMatrix {
    let s1 = ModularMatrix::t();
    let s2 = ModularMatrix::from_i64(0, 1, -1, 2).expect("det 1");
    let (s1i, s2i) = (s1.inverse(), s2.inverse());
    b.letters.iter().fold(ModularMatrix::identity(), |acc, &l| {
        let g = match l {
            1 => &s1,
            -1 => &s1i,
            2 => &s2,
            _ => &s2i,
        };
        &acc * g
    })
}

/// Braid mapping to `+-w` under `braid_to_sl2`: `X -> u^-1`, `Y -> v`.
pub fn lift_word(w: &ModularWord) -> BraidWord {
    let parts: Vec<BraidWord> = w
        .letters
        .iter()
        .map(|l| match l {
            Letter::X => u().inverse(),
            Letter::X2 => u().pow(-2),
            Letter::Y => v(),
        })
        .collect();
    BraidWord::product(&parts)
}

/// Short representative of the class of `b`. The pair (image in SL(2,Z),
/// degree) determines a braid, since the kernel of B3 -> PSL(2,Z) is the
/// center `<u^3>` and `u^3` has degree 6. The representative is
/// `u^{3k}` followed by the lift `X -> u^-1`, `Y -> v` of the normal-form word.
pub fn normal_form(b: &BraidWord) -> BraidWord {
    let m = braid_to_sl2(b);
    let lift = lift_word(&matrix_to_word(&m));
    let diff = b.degree() - lift.degree();
    debug_assert_eq!(diff.rem_euclid(6), 0);
    let nf = u().pow(3 * diff.div_euclid(6)).concat(&lift);
    debug_assert_eq!(braid_to_sl2(&nf), m);
    nf
}

/// Equality in B3: the two braids act identically on `a1, a2, a3`. Both
/// sides are first brought to [`normal_form`] so the free words stay short.
pub fn braid_equal(a: &BraidWord, b: &BraidWord) -> bool {
    artin_images(&normal_form(a)) == artin_images(&normal_form(b))
}

/// Equality by the Artin action on the words as given.
pub fn artin_equal_direct(a: &BraidWord, b: &BraidWord) -> bool {
    artin_images(a) == artin_images(b)
}

/// 2x2 matrix over Z[t, 1/t].
pub type LMat = [[LaurentPoly; 2]; 2];

pub fn lmat_identity() -> LMat {
    [[LaurentPoly::one(), LaurentPoly::zero()], [LaurentPoly::zero(), LaurentPoly::one()]]
}

pub fn lmat_mul(a: &LMat, b: &LMat) -> LMat {
    let e = |i: usize, j: usize| &(&a[i][0] * &b[0][j]) + &(&a[i][1] * &b[1][j]);
    [[e(0, 0), e(0, 1)], [e(1, 0), e(1, 1)]]
}

fn burau_letter(l: i8) -> LMat {
    let p = LaurentPoly::from_coeffs;
    match l {
        1 => [[p(1, &[-1]), p(0, &[1])], [p(0, &[]), p(0, &[1])]],
        -1 => [[p(-1, &[-1]), p(-1, &[1])], [p(0, &[]), p(0, &[1])]],
        2 => [[p(0, &[1]), p(0, &[])], [p(1, &[1]), p(1, &[-1])]],
        _ => [[p(0, &[1]), p(0, &[])], [p(0, &[1]), p(-1, &[-1])]],
    }
}

/// Reduced Burau matrix: `s1 -> [[-t,1],[0,1]]`, `s2 -> [[1,0],[t,-t]]`.
pub fn burau(b: &BraidWord) -> LMat {
    b.letters.iter().fold(lmat_identity(), |acc, &l| lmat_mul(&acc, &burau_letter(l)))
}

/// `{x,y}_m`: `(xy)^k (yx)^-k` for `m = 2k`, `(xy)^k x ((yx)^k y)^-1` for `m = 2k+1`.
pub fn chain_relator(x: &FreeWord, y: &FreeWord, m: u32) -> FreeWord {
    let k = (m / 2) as i64;
    let xy = x.concat(y);
    let yx = y.concat(x);
    if m % 2 == 0 {
        xy.pow(k).concat(&yx.pow(-k))
    } else {
        xy.pow(k).concat(x).concat(&yx.pow(k).concat(y).inverse())
    }
}

const PAIR_SEARCH_NODES: usize = 2_000_000;

/// Shortest braid `mu` with `mu(a1) = x` and `mu(a2) = y`, by breadth-first
/// search over words in `s1^{+-1}, s2^{+-1}`.
pub fn braid_from_pair(x: &FreeWord, y: &FreeWord, max_depth: usize) -> Result<BraidWord> {
    type State = (FreeWord, FreeWord);
    let start: State = (FreeWord::gen(1), FreeWord::gen(2));
    let target: State = (x.clone(), y.clone());
    // node -> (parent, prepended letter)
    let mut parent: HashMap<State, Option<(State, i8)>> = HashMap::new();
    parent.insert(start.clone(), None);
    let mut queue = VecDeque::from([(start, 0usize)]);
    let mut found = None;
    while let Some((st, depth)) = queue.pop_front() {
        if st == target {
            found = Some(st);
            break;
        }
        if depth == max_depth || parent.len() > PAIR_SEARCH_NODES {
            continue;
        }
        for s in [1i8, -1, 2, -2] {
            let next = (apply_letter(s, &st.0), apply_letter(s, &st.1));
            if !parent.contains_key(&next) {
                parent.insert(next.clone(), Some((st.clone(), s)));
                queue.push_back((next, depth + 1));
            }
        }
    }
    let mut node = found.ok_or(Error::NotFound(max_depth))?;
    // letters were prepended, so walking back to the root reads the word left to right
    let mut letters = Vec::new();
    while let Some(Some((prev, s))) = parent.get(&node) {
        letters.push(*s);
        node = prev.clone();
    }
    let mu = BraidWord::new(&letters);
    debug_assert_eq!(artin_apply(&mu, &FreeWord::gen(1)), *x);
    Ok(mu)
}

/// `(s2 s1)^{3d}`, the monodromy at infinity in `Sigma_d`.
pub fn infinity_braid(d: u64) -> BraidWord {
    u().pow(3 * d as i64)
}

/// `b (s2 s1)^3`.
pub fn nagata_twist(b: &BraidWord) -> BraidWord {
    b.concat(&infinity_braid(1))
}

/// 1 when `-id` lies in `Gamma_m(n)` (that is `n <= 2`), else 2.
pub fn depth_of_pullback(m: u64, n: u64) -> Result<u8> {
    check_level(m, n)?;
    Ok(if n <= 2 { 1 } else { 2 })
}

#[cfg(test)]
mod tests {
    use super::*;

    fn fw(s: &str) -> FreeWord {
        FreeWord::parse(s).unwrap()
    }

    fn bw(s: &str) -> BraidWord {
        BraidWord::parse(s).unwrap()
    }

    #[test]
    fn artin_examples() {
        assert_eq!(artin_apply(&bw("s1"), &fw("a1")), fw("a1.a2.a1^-1"));
        assert_eq!(artin_apply(&bw("s2^5.s1^-3.s2"), &FreeWord::rho()), FreeWord::rho());
        let b = bw("s1^-1.s2^-1");
        assert_eq!(artin_apply(&b, &fw("a1")), fw("a2"));
        assert_eq!(artin_apply(&b, &fw("a2")), fw("a3"));
    }

    #[test]
    fn equality_examples() {
        assert!(braid_equal(&bw("s1.s2.s1"), &bw("s2.s1.s2")));
        assert!(braid_equal(&u().pow(3), &v().pow(2)));
        assert!(!braid_equal(&bw("s1"), &bw("s2")));
        assert!(artin_equal_direct(&u().pow(3), &v().pow(2)));
    }

    #[test]
    fn sl2_examples() {
        assert_eq!(braid_to_sl2(&u()), ModularMatrix::from_i64(0, 1, -1, 1).unwrap());
        assert_eq!(braid_to_sl2(&u()), ModularMatrix::x().inverse().neg());
        assert_eq!(braid_to_sl2(&v()), ModularMatrix::y().neg());
        assert!(braid_to_sl2(&u().pow(6)).is_identity());
        assert_eq!(braid_to_sl2(&bw("s1.s2.s1")), braid_to_sl2(&bw("s2.s1.s2")));
    }

    #[test]
    fn burau_examples() {
        let a = burau(&bw("s1.s2.s1"));
        assert_eq!(a, burau(&bw("s2.s1.s2")));
        let z = LaurentPoly::zero();
        assert_eq!(a, [[z.clone(), LaurentPoly::from_coeffs(1, &[-1])], [LaurentPoly::from_coeffs(2, &[-1]), z]]);
        let s2 = burau(&bw("s2"));
        let at = |p: &LaurentPoly| p.eval_unit(-1);
        assert_eq!([at(&s2[0][0]), at(&s2[0][1]), at(&s2[1][0]), at(&s2[1][1])].map(|x| i64::try_from(x).unwrap()), [1, 0, -1, 1]);
        assert_eq!(burau(&BraidWord::identity()), lmat_identity());
    }

    #[test]
    fn chain_relator_examples() {
        assert_eq!(chain_relator(&fw("a1"), &fw("a2"), 1), fw("a1.a2^-1"));
        assert_eq!(chain_relator(&fw("a1"), &fw("a2"), 2), fw("a1.a2.a1^-1.a2^-1"));
        assert_eq!(chain_relator(&fw("a2"), &fw("a3"), 3), fw("a2.a3.a2.a3^-1.a2^-1.a3^-1"));
    }

    #[test]
    fn pair_search_examples() {
        assert_eq!(braid_from_pair(&fw("a1.a2.a1^-1"), &fw("a1"), 4).unwrap(), bw("s1"));
        let mu = braid_from_pair(&fw("a2"), &fw("a3"), 4).unwrap();
        assert_eq!(mu, bw("s1^-1.s2^-1"));
        assert!(braid_equal(&bw("s1").conjugate(&mu), &bw("s2")));
        // {x,y}_3 is symmetric, so the schema pair may be searched in either order
        let (x, y) = (fw("a2^-1.a1.a2"), fw("a3"));
        let mu = braid_from_pair(&x, &y, 8).unwrap();
        assert_eq!(artin_apply(&mu, &fw("a1")), x);
        assert_eq!(artin_apply(&mu, &fw("a2")), y);
        assert_eq!(braid_from_pair(&x, &y, 1), Err(Error::NotFound(1)));
    }

    #[test]
    fn twist_and_infinity() {
        assert_eq!(braid_to_sl2(&nagata_twist(&BraidWord::identity())), ModularMatrix::minus_identity());
        assert!(infinity_braid(0).is_empty());
        assert_eq!(depth_of_pullback(1, 2).unwrap(), 1);
        assert_eq!(depth_of_pullback(1, 3).unwrap(), 2);
    }

    #[test]
    fn parse_roundtrip() {
        let b = bw("s2^3.s1^-1 s1^-1");
        assert_eq!(b.to_string(), "s2^3.s1^-2");
        assert_eq!(bw(&b.to_string()), b);
        assert_eq!(fw("a1^2.a3^-1").to_string(), "a1^2.a3^-1");
        assert!(BraidWord::parse("s3").is_err());
    }
}
