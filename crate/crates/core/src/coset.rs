//! Coset tables of finite-index subgroups of PSL(2,Z), the skeleton
//! (bipartite ribbon graph) they define, and its census.

use std::collections::HashMap;
use std::fmt::Write as _;

use serde_json::{json, Value};

use crate::modular::{check_level, congruence_member, Letter, ModularMatrix, ModularWord};
use crate::{Error, Result};

/// Right action of `X` and `Y` on the cosets `G\PSL(2,Z)`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct CosetTable {
    pub size: usize,
    pub sx: Vec<usize>,
    pub sy: Vec<usize>,
    pub base: usize,
}

impl CosetTable {
    pub fn new(sx: Vec<usize>, sy: Vec<usize>, base: usize) -> Result<Self> {
        let size = sx.len();
        let t = CosetTable { size, sx, sy, base };
        t.validate()?;
        Ok(t)
    }

    pub fn validate(&self) -> Result<()> {
        let n = self.size;
        if n == 0 || self.sy.len() != n || self.base >= n {
            return Err(Error::Invalid("empty or inconsistent coset table".into()));
        }
        for e in 0..n {
            if self.sx[e] >= n || self.sy[e] >= n {
                return Err(Error::Invalid("permutation entry out of range".into()));
            }
            if self.sx[self.sx[self.sx[e]]] != e {
                return Err(Error::Invalid("sX is not of order dividing 3".into()));
            }
            if self.sy[self.sy[e]] != e {
                return Err(Error::Invalid("sY is not an involution".into()));
            }
        }
        if self.bfs_order(self.base).len() != n {
            return Err(Error::Invalid("coset table is not transitive".into()));
        }
        Ok(())
    }

    pub fn act(&self, c: usize, l: Letter) -> usize {
        match l {
            Letter::X => self.sx[c],
            Letter::X2 => self.sx[self.sx[c]],
            Letter::Y => self.sy[c],
        }
    }

    pub fn act_word(&self, c: usize, w: &ModularWord) -> usize {
        w.letters.iter().fold(c, |e, &l| self.act(e, l))
    }

    pub fn sx_inv(&self, c: usize) -> usize {
        self.sx[self.sx[c]]
    }

    /// Face permutation `(sX o sY)^-1`, i.e. `e -> sY(sX^-1(e))`.
    pub fn face(&self, c: usize) -> usize {
        self.sy[self.sx_inv(c)]
    }

    fn bfs_order(&self, start: usize) -> Vec<usize> {
        let mut seen = vec![false; self.size];
        let mut order = vec![start];
        seen[start] = true;
        let mut i = 0;
        while i < order.len() {
            let c = order[i];
            for nb in [self.sx[c], self.sy[c]] {
                if !seen[nb] {
                    seen[nb] = true;
                    order.push(nb);
                }
            }
            i += 1;
        }
        order
    }

    /// Relabels cosets in breadth-first order from `start`.
    pub fn canonical_form(&self, start: usize) -> (Vec<usize>, Vec<usize>) {
        let order = self.bfs_order(start);
        let mut label = vec![usize::MAX; self.size];
        for (k, &c) in order.iter().enumerate() {
            label[c] = k;
        }
        let sx = order.iter().map(|&c| label[self.sx[c]]).collect();
        let sy = order.iter().map(|&c| label[self.sy[c]]).collect();
        (sx, sy)
    }

    /// Same permutation representation: the subgroups are conjugate.
    pub fn isomorphic(&self, other: &CosetTable) -> bool {
        if self.size != other.size {
            return false;
        }
        let target = other.canonical_form(other.base);
        (0..self.size).any(|s| self.canonical_form(s) == target)
    }

    /// Same subgroup: isomorphic with base cosets matched.
    pub fn same_subgroup(&self, other: &CosetTable) -> bool {
        self.size == other.size && self.canonical_form(self.base) == other.canonical_form(other.base)
    }
}

/// Congruence coset table together with a representative word for each coset.
#[derive(Clone, Debug)]
pub struct CongruenceCosets {
    pub m: u64,
    pub n: u64,
    pub table: CosetTable,
    /// `reps[c]` maps the base coset to `c` under the right action.
    pub reps: Vec<ModularWord>,
}

type Res = [u64; 4];

fn res_mul(p: &Res, q: &Res, n: u64) -> Res {
    [
        (p[0] * q[0] + p[1] * q[2]) % n,
        (p[0] * q[1] + p[1] * q[3]) % n,
        (p[2] * q[0] + p[3] * q[2]) % n,
        (p[2] * q[1] + p[3] * q[3]) % n,
    ]
}

/// Canonical key of the coset `G g` for `G = +-Gamma_m(n)`: the minimum of
/// `(a + kc, b + kd, c, d) mod n` over signs and `k` in `mZ/n`.
fn coset_key(g: &Res, m: u64, n: u64) -> Res {
    let mut best: Option<Res> = None;
    for s in [g.to_owned(), g.map(|x| (n - x) % n)] {
        let mut k = 0;
        while k < n {
            let cand = [(s[0] + k * s[2]) % n, (s[1] + k * s[3]) % n, s[2], s[3]];
            if best.map_or(true, |b| cand < b) {
                best = Some(cand);
            }
            k += m;
        }
    }
    best.expect("at least one candidate")
}

/// Cosets of the image of `Gamma_m(n)` in PSL(2,Z), found as the orbit of
/// the identity coset under right multiplication by `X` and `Y`.
pub fn congruence_cosets(m: u64, n: u64) -> Result<CongruenceCosets> {
    check_level(m, n)?;
    let xr = ModularMatrix::x().residues(n);
    let yr = ModularMatrix::y().residues(n);
    let id: Res = [1 % n, 0, 0, 1 % n];
    let mut mats = vec![id];
    let mut words: Vec<Vec<Letter>> = vec![Vec::new()];
    let mut index: HashMap<Res, usize> = HashMap::new();
    index.insert(coset_key(&id, m, n), 0);
    let (mut sx, mut sy) = (Vec::new(), Vec::new());
    let mut i = 0;
    while i < mats.len() {
        for (gen, letter) in [(&xr, Letter::X), (&yr, Letter::Y)] {
            let h = res_mul(&mats[i], gen, n);
            let key = coset_key(&h, m, n);
            let next = mats.len();
            let j = *index.entry(key).or_insert(next);
            if j == next {
                mats.push(h);
                let mut w = words[i].clone();
                w.push(letter);
                words.push(w);
            }
            if letter == Letter::X {
                sx.push(j);
            } else {
                sy.push(j);
            }
        }
        i += 1;
    }
    let table = CosetTable::new(sx, sy, 0)?;
    let reps = words.iter().map(|w| ModularWord::normalize(1, w)).collect();
    Ok(CongruenceCosets { m, n, table, reps })
}

pub fn enumerate_congruence(m: u64, n: u64) -> Result<CosetTable> {
    Ok(congruence_cosets(m, n)?.table)
}

/// Whether `-id` lies in `Gamma_m(n)` itself (not just its PSL image).
pub fn contains_minus_id(m: u64, n: u64) -> Result<bool> {
    congruence_member(&ModularMatrix::minus_identity(), m, n)
}

const NONE: usize = usize::MAX;
// columns: x, x^-1, y
const INV: [usize; 3] = [1, 0, 2];

struct ToddCoxeter {
    table: Vec<[usize; 3]>,
    parent: Vec<usize>,
    queue: Vec<usize>,
    budget: usize,
}

impl ToddCoxeter {
    fn live(&self, c: usize) -> bool {
        self.parent[c] == c
    }

    fn define(&mut self, c: usize, x: usize) -> Result<()> {
        if self.table.len() >= self.budget {
            return Err(Error::BudgetExceeded(self.budget));
        }
        let d = self.table.len();
        self.table.push([NONE; 3]);
        self.parent.push(d);
        self.table[c][x] = d;
        self.table[d][INV[x]] = c;
        Ok(())
    }

    fn rep(&mut self, mut k: usize) -> usize {
        let mut root = k;
        while self.parent[root] != root {
            root = self.parent[root];
        }
        while self.parent[k] != root {
            let next = self.parent[k];
            self.parent[k] = root;
            k = next;
        }
        root
    }

    fn merge(&mut self, k: usize, l: usize) {
        let (a, b) = (self.rep(k), self.rep(l));
        if a != b {
            let (lo, hi) = (a.min(b), a.max(b));
            self.parent[hi] = lo;
            self.queue.push(hi);
        }
    }

    fn coincidence(&mut self, a: usize, b: usize) {
        self.queue.clear();
        self.merge(a, b);
        let mut i = 0;
        while i < self.queue.len() {
            let g = self.queue[i];
            i += 1;
            for x in 0..3 {
                let d = self.table[g][x];
                if d == NONE {
                    continue;
                }
                self.table[d][INV[x]] = NONE;
                let mu = self.rep(g);
                let nu = self.rep(d);
                if self.table[mu][x] != NONE {
                    let t = self.table[mu][x];
                    self.merge(nu, t);
                } else if self.table[nu][INV[x]] != NONE {
                    let t = self.table[nu][INV[x]];
                    self.merge(mu, t);
                } else {
                    self.table[mu][x] = nu;
                    self.table[nu][INV[x]] = mu;
                }
            }
        }
    }

    fn scan_and_fill(&mut self, c: usize, w: &[usize]) -> Result<()> {
        if w.is_empty() {
            return Ok(());
        }
        let (mut f, mut b) = (c, c);
        let (mut i, mut j) = (0usize, w.len() as isize - 1);
        loop {
            while (i as isize) <= j && self.table[f][w[i]] != NONE {
                f = self.table[f][w[i]];
                i += 1;
            }
            if i as isize > j {
                if f != b {
                    self.coincidence(f, b);
                }
                return Ok(());
            }
            while j >= i as isize && self.table[b][INV[w[j as usize]]] != NONE {
                b = self.table[b][INV[w[j as usize]]];
                j -= 1;
            }
            if j < i as isize {
                self.coincidence(f, b);
                return Ok(());
            } else if j == i as isize {
                self.table[f][w[i]] = b;
                self.table[b][INV[w[i]]] = f;
                return Ok(());
            }
            self.define(f, w[i])?;
        }
    }
}

/// Todd-Coxeter enumeration over `<x, y | x^3, y^2>` relative to the
/// subgroup generated by `gens`. Fails once more than `budget` cosets have
/// been defined.
pub fn enumerate_subgroup(gens: &[ModularWord], budget: usize) -> Result<CosetTable> {
    if budget == 0 {
        return Err(Error::Invalid("budget must be at least 1".into()));
    }
    let to_cols = |w: &ModularWord| -> Vec<usize> {
        w.letters
            .iter()
            .flat_map(|l| match l {
                Letter::X => vec![0],
                Letter::X2 => vec![1],
                Letter::Y => vec![2],
            })
            .collect()
    };
    let rels: [Vec<usize>; 2] = [vec![0, 0, 0], vec![2, 2]];
    let mut tc = ToddCoxeter { table: vec![[NONE; 3]], parent: vec![0], queue: Vec::new(), budget };
    for g in gens {
        tc.scan_and_fill(0, &to_cols(g))?;
    }
    let mut c = 0;
    while c < tc.table.len() {
        for r in &rels {
            if !tc.live(c) {
                break;
            }
            tc.scan_and_fill(c, r)?;
        }
        if tc.live(c) {
            for x in 0..3 {
                if tc.table[c][x] == NONE {
                    tc.define(c, x)?;
                }
            }
        }
        c += 1;
    }
    let live: Vec<usize> = (0..tc.table.len()).filter(|&c| tc.live(c)).collect();
    let mut label = vec![NONE; tc.table.len()];
    for (k, &c) in live.iter().enumerate() {
        label[c] = k;
    }
    let sx = live.iter().map(|&c| label[tc.table[c][0]]).collect();
    let sy = live.iter().map(|&c| label[tc.table[c][2]]).collect();
    let t = CosetTable::new(sx, sy, label[0])?;
    let (sx, sy) = t.canonical_form(t.base);
    CosetTable::new(sx, sy, 0)
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Region {
    pub width: usize,
    pub edges: Vec<usize>,
}

#[derive(Clone, Debug)]
pub struct Skeleton {
    pub table: CosetTable,
    pub black: Vec<Vec<usize>>,
    pub white: Vec<Vec<usize>>,
    pub regions: Vec<Region>,
    pub contains_minus_id: Option<bool>,
}

fn cycles(n: usize, f: impl Fn(usize) -> usize) -> Vec<Vec<usize>> {
    let mut seen = vec![false; n];
    let mut out = Vec::new();
    for s in 0..n {
        if seen[s] {
            continue;
        }
        let mut cyc = Vec::new();
        let mut c = s;
        while !seen[c] {
            seen[c] = true;
            cyc.push(c);
            c = f(c);
        }
        out.push(cyc);
    }
    out
}

pub fn build_skeleton(t: &CosetTable) -> Skeleton {
    let black = cycles(t.size, |c| t.sx[c]);
    let white = cycles(t.size, |c| t.sy[c]);
    let regions = cycles(t.size, |c| t.face(c)).into_iter().map(|edges| Region { width: edges.len(), edges }).collect();
    Skeleton { table: t.clone(), black, white, regions, contains_minus_id: None }
}

/// Skeleton of `Gamma_m(n)` with the `-id` flag filled in.
pub fn congruence_skeleton(m: u64, n: u64) -> Result<Skeleton> {
    let mut s = build_skeleton(&enumerate_congruence(m, n)?);
    s.contains_minus_id = Some(contains_minus_id(m, n)?);
    Ok(s)
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Census {
    pub index: usize,
    pub n_black3: usize,
    pub n_black1: usize,
    pub n_white2: usize,
    pub n_white1: usize,
    /// Sorted in decreasing order.
    pub region_widths: Vec<usize>,
    pub genus: i64,
    pub torsion_free: bool,
    pub contains_minus_id: Option<bool>,
    pub d: Option<usize>,
}

impl Census {
    pub fn cusps(&self) -> usize {
        self.region_widths.len()
    }

    pub fn euler_characteristic(&self) -> i64 {
        (self.n_black3 + self.n_black1 + self.n_white2 + self.n_white1 + self.cusps()) as i64 - self.index as i64
    }
}

pub fn census(s: &Skeleton) -> Census {
    let count = |cs: &[Vec<usize>], k: usize| cs.iter().filter(|c| c.len() == k).count();
    let mut widths: Vec<usize> = s.regions.iter().map(|r| r.width).collect();
    widths.sort_unstable_by(|a, b| b.cmp(a));
    let index = s.table.size;
    let chi = (s.black.len() + s.white.len() + s.regions.len()) as i64 - index as i64;
    let (n_black1, n_white1) = (count(&s.black, 1), count(&s.white, 1));
    let torsion_free = n_black1 == 0 && n_white1 == 0;
    Census {
        index,
        n_black3: count(&s.black, 3),
        n_black1,
        n_white2: count(&s.white, 2),
        n_white1,
        region_widths: widths,
        genus: (2 - chi) / 2,
        torsion_free,
        contains_minus_id: s.contains_minus_id,
        d: (torsion_free && index % 6 == 0).then_some(index / 6),
    }
}

/// A cusp class of `Gamma_m(n)`: a region of the skeleton together with
/// whether its generator lifts to a unipotent element of the subgroup.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct CuspClass {
    pub width: usize,
    pub unipotent: bool,
    pub generator: ModularMatrix,
}

pub fn cusp_classes(cc: &CongruenceCosets) -> Result<Vec<CuspClass>> {
    let s = build_skeleton(&cc.table);
    // one face step is X^-1 Y = -[[1,0],[1,1]]
    let step = ModularMatrix::from_i64(1, 0, 1, 1)?;
    let mut out = Vec::new();
    for r in &s.regions {
        let rep = crate::modular::word_to_matrix(&cc.reps[r.edges[0]]);
        let g = &(&rep * &step.pow(r.width as i64)) * &rep.inverse();
        let unipotent = congruence_member(&g, cc.m, cc.n)?;
        if !unipotent && !congruence_member(&g.neg(), cc.m, cc.n)? {
            return Err(Error::Invalid("cusp generator outside the subgroup".into()));
        }
        let generator = if unipotent { g } else { g.neg() };
        out.push(CuspClass { width: r.width, unipotent, generator });
    }
    Ok(out)
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum OracleKind {
    Gamma1,
    Gamma,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct OracleData {
    pub index: u64,
    pub cusps: u64,
    pub genus: i64,
    pub nu2: u64,
    pub nu3: u64,
}

fn phi(n: u64) -> u64 {
    let mut r = n;
    let mut m = n;
    let mut p = 2;
    while p * p <= m {
        if m % p == 0 {
            while m % p == 0 {
                m /= p;
            }
            r -= r / p;
        }
        p += 1;
    }
    if m > 1 {
        r -= r / m;
    }
    r
}

/// `n^2 prod (1 - p^-2)` over primes `p | n`.
fn jordan2(n: u64) -> u64 {
    let mut r = n * n;
    let mut m = n;
    let mut p = 2;
    while p * p <= m {
        if m % p == 0 {
            while m % p == 0 {
                m /= p;
            }
            r = r / (p * p) * (p * p - 1);
        }
        p += 1;
    }
    if m > 1 {
        r = r / (m * m) * (m * m - 1);
    }
    r
}

/// Closed-form index, cusp count and genus of the images of `Gamma_1(n)` and
/// `Gamma(n)` in PSL(2,Z).
pub fn genus_oracle(kind: OracleKind, n: u64) -> OracleData {
    assert!(n >= 1);
    let (index, cusps, nu2, nu3) = match (kind, n) {
        (_, 1) => (1, 1, 1, 1),
        (OracleKind::Gamma1, 2) => (3, 2, 1, 0),
        (OracleKind::Gamma1, 3) => (4, 2, 0, 1),
        (OracleKind::Gamma1, 4) => (6, 3, 0, 0),
        (OracleKind::Gamma1, n) => {
            let cusps = (1..=n).filter(|d| n % d == 0).map(|d| phi(d) * phi(n / d)).sum::<u64>() / 2;
            (jordan2(n) / 2, cusps, 0, 0)
        }
        (OracleKind::Gamma, 2) => (6, 3, 0, 0),
        (OracleKind::Gamma, n) => {
            let index = n * jordan2(n) / 2;
            (index, index / n, 0, 0)
        }
    };
    // 12 g = 12 + index - 3 nu2 - 4 nu3 - 6 cusps
    let twelve_g = 12 + index as i64 - 3 * nu2 as i64 - 4 * nu3 as i64 - 6 * cusps as i64;
    debug_assert_eq!(twelve_g % 12, 0);
    OracleData { index, cusps, genus: twelve_g / 12, nu2, nu3 }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum ExportFormat {
    Dot,
    Json,
}

pub fn skeleton_json(s: &Skeleton) -> Value {
    let c = census(s);
    json!({
        "schema_version": crate::SCHEMA_VERSION,
        "index": c.index,
        "edges": c.index,
        "sX": s.table.sx,
        "sY": s.table.sy,
        "black": s.black,
        "white": s.white,
        "regions": s.regions.iter().map(|r| json!({"width": r.width, "edges": r.edges})).collect::<Vec<_>>(),
        "region_widths": c.region_widths,
        "genus": c.genus,
        "torsion_free": c.torsion_free,
        "contains_minus_id": c.contains_minus_id,
        "d": c.d,
    })
}

pub fn export_skeleton(s: &Skeleton, format: ExportFormat) -> String {
    match format {
        ExportFormat::Json => serde_json::to_string_pretty(&skeleton_json(s)).expect("json"),
        ExportFormat::Dot => skeleton_dot(s),
    }
}

fn skeleton_dot(s: &Skeleton) -> String {
    let t = &s.table;
    let mut black_of = vec![0; t.size];
    for (i, cyc) in s.black.iter().enumerate() {
        for &e in cyc {
            black_of[e] = i;
        }
    }
    let mut out = String::from("graph skeleton {\n  node [shape=circle, label=\"\", width=0.15];\n");
    for (i, cyc) in s.black.iter().enumerate() {
        let ports: Vec<String> = cyc.iter().map(|e| e.to_string()).collect();
        let _ = writeln!(out, "  b{i} [style=filled, fillcolor=black, comment=\"ccw edges: {}\"];", ports.join(" "));
    }
    for (i, cyc) in s.white.iter().enumerate() {
        match cyc.as_slice() {
            [e] => {
                let _ = writeln!(out, "  w{i} [style=solid];");
                let _ = writeln!(out, "  b{} -- w{i} [label=\"{e}\"];", black_of[*e]);
            }
            [e, f] => {
                let _ = writeln!(out, "  b{} -- b{} [label=\"{e},{f}\"];", black_of[*e], black_of[*f]);
            }
            _ => unreachable!("white vertices have valency 1 or 2"),
        }
    }
    out.push_str("}\n");
    out
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn small_congruence_tables() {
        assert_eq!(enumerate_congruence(1, 1).unwrap().size, 1);
        let c = census(&congruence_skeleton(3, 3).unwrap());
        assert_eq!((c.index, c.n_black3, c.n_white2, c.genus, c.d), (12, 4, 6, 0, Some(2)));
        assert_eq!(c.region_widths, vec![3, 3, 3, 3]);
        let c = census(&congruence_skeleton(1, 2).unwrap());
        assert_eq!((c.index, c.n_black3, c.n_white1), (3, 1, 1));
        assert_eq!(c.region_widths, vec![2, 1]);
    }

    #[test]
    fn oracle_examples() {
        assert_eq!(genus_oracle(OracleKind::Gamma1, 5), OracleData { index: 12, cusps: 4, genus: 0, nu2: 0, nu3: 0 });
        let o = genus_oracle(OracleKind::Gamma1, 11);
        assert_eq!((o.index, o.cusps, o.genus), (60, 10, 1));
        let o = genus_oracle(OracleKind::Gamma, 5);
        assert_eq!((o.index, o.cusps, o.genus), (60, 12, 0));
    }

    #[test]
    fn todd_coxeter_small() {
        let full = enumerate_subgroup(&[ModularWord::parse("X").unwrap(), ModularWord::parse("Y").unwrap()], 100).unwrap();
        assert_eq!(full.size, 1);
        let w = |s: &str| ModularWord::parse(s).unwrap();
        // normal closures of X and of Y
        assert_eq!(enumerate_subgroup(&[w("X"), w("Y.X.Y")], 100).unwrap().size, 2);
        assert_eq!(enumerate_subgroup(&[w("Y"), w("X.Y.X^2"), w("X^2.Y.X")], 100).unwrap().size, 3);
        assert_eq!(enumerate_subgroup(&[w("Y")], 50), Err(Error::BudgetExceeded(50)));
    }

    #[test]
    fn trivial_skeleton_export() {
        let s = build_skeleton(&CosetTable::new(vec![0], vec![0], 0).unwrap());
        let c = census(&s);
        assert_eq!((c.n_black1, c.n_white1, c.region_widths.clone()), (1, 1, vec![1]));
        let v: Value = serde_json::from_str(&export_skeleton(&s, ExportFormat::Json)).unwrap();
        assert_eq!(v["edges"], 1);
        assert!(export_skeleton(&s, ExportFormat::Dot).contains("w0"));
    }
}
