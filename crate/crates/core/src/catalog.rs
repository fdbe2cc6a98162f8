//! Universal trigonal curves of the genus-zero congruence subgroups, their
//! assembled monodromy, and verification against the expected invariants.

use serde_json::{json, Value};

use crate::braid::{
    braid_from_pair, braid_to_sl2, infinity_braid, lift_word, normal_form, BraidWord, FreeWord,
};
use crate::coset::{census, congruence_cosets, congruence_skeleton, enumerate_subgroup, genus_oracle, Census, CongruenceCosets, OracleKind};
use crate::exact::{FinAbGroup, LaurentPoly};
use crate::invariants::{
    alexander_abelian_invariants, alexander_polynomial, burau_minus_one_quotient, component_count, cyclotomic_factors, delta_2p_consistent,
    dihedral_admissible, fiber_type, group_json, maximal_uniform_quotient, oka_report, z_splitting_count, MonodromyData,
};
use crate::modular::{congruence_member, matrix_to_word, word_to_matrix, Letter, ModularMatrix, ModularWord};
use crate::presentation::{abelianization, van_kampen, Flavor};
use crate::{Error, Result};

/// One local braid of a catalog curve.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Relation {
    /// `s2^twist {x, y}_m`: the braid `s2^twist mu s1^m mu^-1 s2^-twist` with
    /// `mu(a1) = x`, `mu(a2) = y`.
    Pair { x: FreeWord, y: FreeWord, exponent: u32, twist: i64 },
    /// `h s1^m h^-1`.
    Conjugate { h: BraidWord, exponent: u32 },
    /// A braid given outright (exceptional fibers).
    Local(BraidWord),
    /// Whatever completes the product to `(s2 s1)^{3d}`; must be of type `A_{m-1}`.
    Completion { exponent: u32 },
}

impl Relation {
    /// Width of the region this relation accounts for, zero for elliptic fibers.
    fn width(&self, b: &BraidWord) -> usize {
        match self {
            Relation::Pair { exponent, .. } | Relation::Conjugate { exponent, .. } | Relation::Completion { exponent } => *exponent as usize,
            Relation::Local(_) => parabolic_width(b).unwrap_or(0),
        }
    }

    fn describe(&self) -> String {
        match self {
            Relation::Pair { x, y, exponent, twist } => format!("s2^{twist} {{{x}, {y}}}_{exponent}"),
            Relation::Conjugate { h, exponent } => format!("({h}) s1^{exponent} ({h})^-1"),
            Relation::Local(b) => b.to_string(),
            Relation::Completion { exponent } => format!("completion (A{})", exponent - 1),
        }
    }
}

/// Content of `+-g - id` for a parabolic image.
pub fn parabolic_width(b: &BraidWord) -> Option<usize> {
    use num_integer::Integer;
    use num_traits::ToPrimitive;
    let g = braid_to_sl2(b);
    let t = g.trace();
    let h = if t == crate::exact::big(2) {
        g
    } else if t == crate::exact::big(-2) {
        g.neg()
    } else {
        return None;
    };
    let [[p, q], [r, s]] = h.minus_id();
    p.gcd(&q).gcd(&r).gcd(&s).to_usize().filter(|&w| w > 0)
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Source {
    /// Conjugators read off a walk around the regions of the skeleton.
    SkeletonWalk,
    /// Chain-relator schema with conjugators found by pair search.
    Schema,
    /// Explicit braids for curves with exceptional fibers.
    Explicit,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Expected {
    pub q: FinAbGroup,
    pub components: usize,
    pub delta: Option<LaurentPoly>,
    pub alexander_group: Option<FinAbGroup>,
    pub z_splitting: u64,
}

#[derive(Clone, Debug)]
pub struct CatalogEntry {
    pub m: u64,
    pub n: u64,
    pub figure: &'static str,
    pub census: Census,
    pub d: u64,
    /// Expected fiber types; `fibers_quoted` is false when they are read off the skeleton.
    pub fibers: Vec<String>,
    pub fibers_quoted: bool,
    pub schema: Vec<Relation>,
    pub source: Source,
    pub monodromy: MonodromyData,
    pub expected: Expected,
}

impl CatalogEntry {
    pub fn name(&self) -> String {
        group_name(self.m, self.n)
    }
}

pub fn group_name(m: u64, n: u64) -> String {
    if m == n && n > 1 {
        format!("Gamma({n})")
    } else if m == 1 {
        format!("Gamma1({n})")
    } else {
        format!("Gamma{m}({n})")
    }
}

/// Walk around the regions of the skeleton. Each region met for the first
/// time contributes `h T^w h^-1`, where `w` is its width and `h` the path
/// from the base coset; the product in list order is `+-id`.
pub fn skeleton_walk(cc: &CongruenceCosets) -> Vec<(ModularWord, usize)> {
    let t = &cc.table;
    let orbit = |c: usize| t.sy[t.sx[c]];
    let mut region = vec![usize::MAX; t.size];
    let mut widths = Vec::new();
    for s in 0..t.size {
        if region[s] != usize::MAX {
            continue;
        }
        let (mut c, mut w) = (s, 0);
        while region[c] == usize::MAX {
            region[c] = widths.len();
            c = orbit(c);
            w += 1;
        }
        widths.push(w);
    }
    let mut visited = vec![false; widths.len()];
    let mut out = Vec::new();
    fn walk(
        c0: usize,
        h: Vec<Letter>,
        t: &crate::coset::CosetTable,
        region: &[usize],
        widths: &[usize],
        visited: &mut [bool],
        out: &mut Vec<(ModularWord, usize)>,
    ) {
        let r = region[c0];
        visited[r] = true;
        let mut c = c0;
        let mut pre = h.clone();
        for _ in 0..widths[r] {
            let cx = t.sx[c];
            if !visited[region[cx]] {
                let mut hx = pre.clone();
                hx.push(Letter::X);
                walk(cx, hx, t, region, widths, visited, out);
            }
            c = t.sy[cx];
            pre.push(Letter::X);
            pre.push(Letter::Y);
        }
        out.push((ModularWord::normalize(1, &h), widths[r]));
    }
    walk(0, Vec::new(), t, &region, &widths, &mut visited, &mut out);
    out
}

pub fn walk_relations(cc: &CongruenceCosets) -> Vec<Relation> {
    skeleton_walk(cc)
        .into_iter()
        .map(|(h, w)| {
            let h = matrix_to_word(&word_to_matrix(&h));
            Relation::Conjugate { h: lift_word(&h), exponent: w as u32 }
        })
        .collect()
}

const PAIR_DEPTH: usize = 16;
const ORDER_BUDGET: usize = 5040;

fn resolve(r: &Relation) -> Result<BraidWord> {
    match r {
        Relation::Pair { x, y, exponent, twist } => {
            // {x,y}_m = {y,x}_m for odd m, so either order names the relation;
            // deepen both searches together since one of them may be hopeless
            let mut found = None;
            for depth in (4..=PAIR_DEPTH).step_by(4) {
                found = braid_from_pair(x, y, depth).ok();
                if found.is_none() && exponent % 2 == 1 {
                    found = braid_from_pair(y, x, depth).ok();
                }
                if found.is_some() {
                    break;
                }
            }
            let mu = found.ok_or(Error::NotFound(PAIR_DEPTH))?;
            let b = BraidWord::s1().pow(*exponent as i64).conjugate(&mu);
            Ok(b.conjugate(&BraidWord::s2().pow(*twist)))
        }
        Relation::Conjugate { h, exponent } => Ok(BraidWord::s1().pow(*exponent as i64).conjugate(h)),
        Relation::Local(b) => Ok(b.clone()),
        Relation::Completion { .. } => Err(Error::Invalid("completion has no braid of its own".into())),
    }
}

fn next_permutation(p: &mut [usize]) -> bool {
    let Some(i) = (1..p.len()).rev().find(|&i| p[i - 1] < p[i]) else { return false };
    let j = (i..p.len()).rev().find(|&j| p[j] > p[i - 1]).expect("pivot");
    p.swap(i - 1, j);
    p[i..].reverse();
    true
}

/// Resolves a schema into an ordered braid tuple for `Sigma_d`. The listed
/// order is tried first, then further orders of the explicit relations.
pub fn assemble(schema: &[Relation], d: u64) -> Result<(Vec<Relation>, Vec<BraidWord>)> {
    let (fixed, completion): (Vec<&Relation>, Vec<&Relation>) = schema.iter().partition(|r| !matches!(r, Relation::Completion { .. }));
    if completion.len() > 1 || (completion.len() == 1 && !matches!(schema.last(), Some(Relation::Completion { .. }))) {
        return Err(Error::Invalid("a completion may only appear last".into()));
    }
    let braids = fixed.iter().map(|r| resolve(r)).collect::<Result<Vec<_>>>()?;
    let inf = infinity_braid(d);
    let mut perm: Vec<usize> = (0..braids.len()).collect();
    for _ in 0..ORDER_BUDGET {
        let prod = BraidWord::product(perm.iter().map(|&k| &braids[k]));
        let ordered_rel: Vec<Relation> = perm.iter().map(|&k| fixed[k].clone()).collect();
        let ordered: Vec<BraidWord> = perm.iter().map(|&k| braids[k].clone()).collect();
        match completion.first() {
            Some(Relation::Completion { exponent }) => {
                let last = normal_form(&prod.inverse().concat(&inf));
                let want = if *exponent == 1 { "A0*".to_string() } else { format!("A{}", exponent - 1) };
                if fiber_type(&last) == want && parabolic_width(&last) == Some(*exponent as usize) {
                    let mut rs = ordered_rel;
                    rs.push(Relation::Completion { exponent: *exponent });
                    let mut bs = ordered;
                    bs.push(last);
                    return Ok((rs, bs));
                }
            }
            _ => {
                if crate::braid::braid_equal(&prod, &inf) {
                    return Ok((ordered_rel, ordered));
                }
            }
        }
        if !next_permutation(&mut perm) {
            break;
        }
    }
    Err(Error::AssemblyFailed(format!("no order of {} relations gives (s2 s1)^{}", braids.len(), 3 * d)))
}

/// Coset whose representative `P` makes every `P^-1 g P` a member of `Gamma_m(n)`.
pub fn global_conjugator(cc: &CongruenceCosets, braids: &[BraidWord]) -> Result<Option<usize>> {
    let imgs: Vec<ModularMatrix> = braids.iter().map(braid_to_sl2).collect();
    for (c, rep) in cc.reps.iter().enumerate() {
        let p = word_to_matrix(rep);
        let pi = p.inverse();
        let mut ok = true;
        for g in &imgs {
            if !congruence_member(&(&(&pi * g) * &p), cc.m, cc.n)? {
                ok = false;
                break;
            }
        }
        if ok {
            return Ok(Some(c));
        }
    }
    Ok(None)
}

fn fw(s: &str) -> FreeWord {
    FreeWord::parse(s).expect("catalog word")
}

fn bw(s: &str) -> BraidWord {
    BraidWord::parse(s).expect("catalog braid")
}

fn pair(x: &str, y: &str, exponent: u32, twist: i64) -> Relation {
    Relation::Pair { x: fw(x), y: fw(y), exponent, twist }
}

struct Row {
    m: u64,
    n: u64,
    figure: &'static str,
    d: Option<u64>,
    fibers: Option<&'static [&'static str]>,
    delta: Option<fn() -> LaurentPoly>,
    alexander: Option<(usize, &'static [i64])>,
    z_splitting: Option<u64>,
}

const fn row(m: u64, n: u64, figure: &'static str) -> Row {
    Row { m, n, figure, d: None, fibers: None, delta: None, alexander: None, z_splitting: None }
}

fn phi6() -> LaurentPoly {
    LaurentPoly::cyclotomic(6)
}
fn phi6_sq() -> LaurentPoly {
    LaurentPoly::cyclotomic(6).pow(2)
}
fn phi10_sq() -> LaurentPoly {
    LaurentPoly::cyclotomic(10).pow(2)
}
fn one() -> LaurentPoly {
    LaurentPoly::one()
}

fn rows() -> Vec<Row> {
    vec![
        Row { d: Some(1), ..row(1, 1, "ultimate") },
        Row { d: Some(1), fibers: Some(&["A1*", "A1", "A0*"]), ..row(1, 2, "2a") },
        Row { d: Some(2), fibers: Some(&["E6", "A2", "A0*"]), delta: Some(phi6), ..row(1, 3, "1a") },
        Row { d: Some(2), fibers: Some(&["A3", "D5", "A0*"]), ..row(1, 4, "2c") },
        Row { fibers: Some(&["A4", "A4", "A0*", "A0*"]), delta: Some(one), alexander: Some((0, &[5])), ..row(1, 5, "1c") },
        row(1, 6, "2i"),
        Row { fibers: Some(&["A6", "A6", "A6", "A0*", "A0*", "A0*"]), delta: Some(one), alexander: Some((0, &[7])), ..row(1, 7, "1d") },
        row(1, 8, "2f"),
        Row {
            fibers: Some(&["A8", "A8", "A8", "A2", "A2", "A0*", "A0*", "A0*"]),
            delta: Some(phi6),
            alexander: Some((2, &[3])),
            ..row(1, 9, "1e")
        },
        row(1, 10, "2h"),
        row(2, 2, "2b"),
        Row { fibers: Some(&["A2", "A2", "A2", "A2"]), delta: Some(phi6_sq), alexander: Some((4, &[])), ..row(3, 3, "1b") },
        row(4, 4, "2e"),
        Row { fibers: Some(&["A4"; 12]), delta: Some(phi10_sq), z_splitting: Some(12), ..row(5, 5, "1f") },
        row(2, 4, "2d"),
        row(2, 6, "2j"),
        row(3, 6, "2k"),
        row(2, 8, "2g"),
    ]
}

fn explicit_schema(m: u64, n: u64) -> Option<Vec<Relation>> {
    let rel = |s: &str| Relation::Local(bw(s));
    Some(match (m, n) {
        (1, 1) => vec![rel("s2.s1"), rel("s2.s1.s2"), rel("s1")],
        (1, 2) => vec![Relation::Local(crate::braid::u().pow(3).concat(&bw("s1^-1.s2^-2"))), rel("s2^2"), rel("s1")],
        (1, 3) => vec![Relation::Local(crate::braid::u().pow(6).concat(&bw("s1^-1.s2^-3"))), rel("s2^3"), rel("s1")],
        (1, 4) => vec![Relation::Local(crate::braid::u().pow(6).concat(&bw("s1^-1.s2^-4"))), rel("s2^4"), rel("s1")],
        _ => return None,
    })
}

/// Chain-relator schemas with one relation left to the infinity identity.
fn chain_schema(m: u64, n: u64) -> Option<Vec<Relation>> {
    Some(match (m, n) {
        (3, 3) => vec![pair("a1", "a2", 3, 0), pair("a2", "a3", 3, 0), pair("a3", "a2^-1.a1.a2", 3, 0), Relation::Completion { exponent: 3 }],
        (1, 9) => {
            let mut v = Vec::new();
            for i in 0..3 {
                v.push(pair("a1", "a2", 9, i));
                v.push(pair("a3", "a2^-1.a1^-1.a2^-1.a1.a2.a1.a2", 1, i));
            }
            v.push(pair("a2", "a3", 3, 0));
            v.push(Relation::Completion { exponent: 3 });
            v
        }
        (5, 5) => {
            let mut v = Vec::new();
            for i in 0..5 {
                v.push(pair("a1", "a2", 5, i));
                v.push(pair("a3", "a2^-1.a1^-1.a2.a1.a2", 5, i));
            }
            v.push(pair("a2", "a3", 5, 0));
            v.push(Relation::Completion { exponent: 5 });
            v
        }
        _ => return None,
    })
}

pub fn expected_components(q: &FinAbGroup) -> usize {
    match q.two_rank() {
        0 => 1,
        1 => 2,
        _ => 3,
    }
}

pub fn entry_ids() -> Vec<(u64, u64)> {
    rows().iter().map(|r| (r.m, r.n)).collect()
}

fn build_row(r: &Row) -> Result<CatalogEntry> {
    let skel = congruence_skeleton(r.m, r.n)?;
    let cen = census(&skel);
    let d = match (r.d, cen.d) {
        (Some(d), _) => d,
        (None, Some(d)) => d as u64,
        (None, None) => return Err(Error::AssemblyFailed(format!("{} needs an explicit d", group_name(r.m, r.n)))),
    };
    let (source, schema) = if let Some(s) = explicit_schema(r.m, r.n) {
        (Source::Explicit, s)
    } else if let Some(s) = chain_schema(r.m, r.n) {
        (Source::Schema, s)
    } else {
        (Source::SkeletonWalk, walk_relations(&congruence_cosets(r.m, r.n)?))
    };
    let (schema, braids) = assemble(&schema, d)?;
    let monodromy = MonodromyData::new(braids, d);
    let (fibers, fibers_quoted) = match r.fibers {
        Some(f) => (f.iter().map(|s| s.to_string()).collect(), true),
        None => (monodromy.braids.iter().map(fiber_type).collect(), false),
    };
    let q = if r.m == 1 && r.n == 1 { FinAbGroup::trivial() } else { FinAbGroup::from_small(0, &[r.m as i64, r.n as i64]) };
    let z = match r.z_splitting {
        Some(z) => z,
        None => z_splitting_count(&q)?,
    };
    let expected = Expected {
        components: expected_components(&q),
        delta: r.delta.map(|f| f()),
        alexander_group: r.alexander.map(|(free, fs)| FinAbGroup::from_small(free, fs)),
        z_splitting: z,
        q,
    };
    Ok(CatalogEntry { m: r.m, n: r.n, figure: r.figure, census: cen, d, fibers, fibers_quoted, schema, source, monodromy, expected })
}

pub fn build_entry(m: u64, n: u64) -> Result<CatalogEntry> {
    let r = rows().into_iter().find(|r| r.m == m && r.n == n).ok_or_else(|| Error::Invalid(format!("no catalog entry for {}", group_name(m, n))))?;
    build_row(&r)
}

pub fn build_catalog() -> Result<Vec<CatalogEntry>> {
    rows().iter().map(build_row).collect()
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct CheckLine {
    pub name: &'static str,
    pub pass: bool,
    pub detail: String,
}

#[derive(Clone, Debug)]
pub struct VerifyReport {
    pub entry: String,
    pub lines: Vec<CheckLine>,
}

impl VerifyReport {
    pub fn passed(&self) -> bool {
        self.lines.iter().all(|l| l.pass)
    }

    pub fn failures(&self) -> Vec<&CheckLine> {
        self.lines.iter().filter(|l| !l.pass).collect()
    }

    pub fn to_json(&self) -> Value {
        json!({
            "entry": self.entry,
            "passed": self.passed(),
            "checks": self.lines.iter().map(|l| json!({"name": l.name, "pass": l.pass, "detail": l.detail})).collect::<Vec<_>>(),
        })
    }
}

/// Index, cusp count and genus the census should have.
fn oracle_for(m: u64, n: u64) -> (u64, Option<u64>, i64) {
    if m == 1 {
        let o = genus_oracle(OracleKind::Gamma1, n);
        (o.index, Some(o.cusps), o.genus)
    } else if m == n {
        let o = genus_oracle(OracleKind::Gamma, n);
        (o.index, Some(o.cusps), o.genus)
    } else {
        // Gamma_m(n) has index m in Gamma_1(n); every catalog group has genus 0
        (m * genus_oracle(OracleKind::Gamma1, n).index, None, 0)
    }
}

const SUBGROUP_BUDGET: usize = 20_000;

pub fn verify(e: &CatalogEntry) -> VerifyReport {
    let mut lines = Vec::new();
    let mut check = |name: &'static str, pass: bool, detail: String| lines.push(CheckLine { name, pass, detail });
    let md = &e.monodromy;
    let c = &e.census;

    let (index, cusps, genus) = oracle_for(e.m, e.n);
    let census_ok = c.index as u64 == index && cusps.map_or(true, |k| c.cusps() as u64 == k) && c.genus == genus;
    check("census", census_ok, format!("index {} cusps {} genus {}; oracle index {index} cusps {cusps:?} genus {genus}", c.index, c.cusps(), c.genus));

    let widths: usize = e.schema.iter().zip(&md.braids).map(|(r, b)| r.width(b)).sum();
    check("schema_widths", widths == c.index, format!("sum of widths {widths}, edges {}", c.index));

    let inf = md.validate(true);
    check("infinity_identity", inf.is_ok(), format!("d = {}", e.d));

    let conj = congruence_cosets(e.m, e.n).and_then(|cc| global_conjugator(&cc, &md.braids));
    check(
        "congruence_membership",
        matches!(conj, Ok(Some(_))),
        match &conj {
            Ok(Some(k)) => format!("conjugator coset {k}"),
            Ok(None) => "no global conjugator".into(),
            Err(err) => err.to_string(),
        },
    );

    let gens: Vec<ModularWord> = md.sl2_images().iter().map(matrix_to_word).collect();
    let sub = enumerate_subgroup(&gens, SUBGROUP_BUDGET);
    check(
        "monodromy_index",
        matches!(&sub, Ok(t) if t.size == c.index),
        match &sub {
            Ok(t) => format!("generated subgroup has index {}", t.size),
            Err(err) => err.to_string(),
        },
    );

    let q = maximal_uniform_quotient(md);
    check("Q", q == e.expected.q, format!("{q} (expected {})", e.expected.q));
    let qb = burau_minus_one_quotient(md);
    check("Q_burau", qb == q, format!("Burau at -1 gives {qb}"));

    let comps = component_count(md);
    check("components", comps == e.expected.components, format!("{comps} (expected {})", e.expected.components));
    let ab = abelianization(&van_kampen(md, Flavor::Affine, false));
    check("abelianization_rank", ab.free_rank == comps, format!("affine abelianization {ab}"));

    let delta = alexander_polynomial(md);
    match (&e.expected.delta, &delta) {
        (Some(want), Ok(got)) => check("delta", got == &want.normalized(), format!("{got} (expected {})", want.normalized())),
        (Some(want), Err(err)) => check("delta", false, format!("{err} (expected {want})")),
        (None, Ok(got)) => check("delta", true, format!("{got} (no expected value)")),
        (None, Err(err)) => check("delta", comps > 1, format!("{err}")),
    }
    if let Ok(dl) = &delta {
        let (fs, rest) = cyclotomic_factors(dl, e.d);
        let bounded = rest.span() == Some(0) && fs.iter().all(|&(_, k)| k <= 2);
        check("delta_cyclotomic", bounded, format!("{fs:?}, remainder {rest}"));
        if comps == 1 {
            let prime_to_phi1 = !LaurentPoly::cyclotomic(1).divides(dl);
            check("delta_prime_to_phi1", prime_to_phi1, String::new());
        }
        check("delta_2p", delta_2p_consistent(dl, &q, e.d), String::new());
    }

    if let Some(want) = &e.expected.alexander_group {
        let got = alexander_abelian_invariants(md);
        check("alexander_group", got.as_ref() == Ok(want), format!("{:?} (expected {want})", got.map(|g| g.to_string())));
    }

    let z = z_splitting_count(&q);
    check("z_splitting", z.as_ref() == Ok(&e.expected.z_splitting), format!("{z:?} (expected {})", e.expected.z_splitting));
    check("admissible", dihedral_admissible(&q), String::new());

    let mut got: Vec<String> = md.braids.iter().map(fiber_type).collect();
    let mut want = e.fibers.clone();
    got.sort();
    want.sort();
    check("fibers", got == want, format!("{} {}", got.join("+"), if e.fibers_quoted { "quoted" } else { "derived" }));

    let oka = oka_report(md);
    check("oka", oka.consistent, format!("D6 {} phi6 {} components {}", oka.has_d6, oka.phi6_divides_delta, oka.component_count));

    if e.source == Source::Schema {
        let cross = congruence_cosets(e.m, e.n).and_then(|cc| assemble(&walk_relations(&cc), e.d));
        let agree = match &cross {
            Ok((_, bs)) => {
                let walk = MonodromyData::new(bs.clone(), e.d);
                maximal_uniform_quotient(&walk) == q && alexander_polynomial(&walk).ok() == delta.as_ref().ok().cloned()
            }
            Err(_) => false,
        };
        check("schema_vs_walk", agree, "Q and delta from the skeleton walk".into());
    }

    VerifyReport { entry: e.name(), lines }
}

pub fn entry_json(e: &CatalogEntry) -> Value {
    json!({
        "m": e.m,
        "n": e.n,
        "name": e.name(),
        "figure": e.figure,
        "index": e.census.index,
        "region_widths": e.census.region_widths,
        "d": e.d,
        "fibers": e.fibers,
        "fibers_quoted": e.fibers_quoted,
        "source": format!("{:?}", e.source),
        "schema": e.schema.iter().map(Relation::describe).collect::<Vec<_>>(),
        "braids": e.monodromy.braids.iter().map(|b| b.to_string()).collect::<Vec<_>>(),
        "expected": {
            "Q": group_json(&e.expected.q),
            "components": e.expected.components,
            "delta": e.expected.delta.as_ref().map(|d| d.normalized().to_string()),
            "alexander_group": e.expected.alexander_group.as_ref().map(group_json),
            "z_splitting": e.expected.z_splitting,
        },
    })
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct GenusRow {
    pub m: u64,
    pub n: u64,
    pub index: usize,
    pub genus: i64,
    pub torsion_free: bool,
    pub contains_minus_id: bool,
    /// `Z/m + Z/n` is a quotient of one of the eight maximal groups.
    pub admissible: bool,
    pub discrepancy: bool,
}

impl GenusRow {
    pub fn genus_zero(&self) -> bool {
        self.genus == 0
    }
}

pub const GENUS_TABLE_MAX: u64 = 60;

pub fn genus_table(max_n: u64) -> Result<Vec<GenusRow>> {
    if max_n > GENUS_TABLE_MAX {
        return Err(Error::BudgetExceeded(GENUS_TABLE_MAX as usize));
    }
    let mut rows = Vec::new();
    for n in 1..=max_n {
        for m in (1..=n).filter(|m| n % m == 0) {
            let s = congruence_skeleton(m, n)?;
            let c = census(&s);
            let q = if n == 1 { FinAbGroup::trivial() } else { FinAbGroup::from_small(0, &[m as i64, n as i64]) };
            let admissible = dihedral_admissible(&q);
            rows.push(GenusRow {
                m,
                n,
                index: c.index,
                genus: c.genus,
                torsion_free: c.torsion_free,
                contains_minus_id: s.contains_minus_id.unwrap_or(false),
                admissible,
                discrepancy: (c.genus == 0) != admissible,
            });
        }
    }
    Ok(rows)
}

pub fn genus_table_json(rows: &[GenusRow]) -> Value {
    json!({
        "schema_version": crate::SCHEMA_VERSION,
        "rows": rows.iter().map(|r| json!({
            "m": r.m, "n": r.n, "index": r.index, "genus": r.genus,
            "torsion_free": r.torsion_free, "contains_minus_id": r.contains_minus_id,
            "genus_zero": r.genus_zero(), "admissible": r.admissible, "discrepancy": r.discrepancy,
        })).collect::<Vec<_>>(),
    })
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn walk_product_is_central() {
        for (m, n) in [(1, 5), (2, 2), (3, 3), (1, 7)] {
            let cc = congruence_cosets(m, n).unwrap();
            let rels = walk_relations(&cc);
            let sum: usize = rels.iter().map(|r| match r {
                Relation::Conjugate { exponent, .. } => *exponent as usize,
                _ => 0,
            }).sum();
            assert_eq!(sum, cc.table.size);
            let bs: Vec<BraidWord> = rels.iter().map(|r| resolve(r).unwrap()).collect();
            let d = (cc.table.size / 6) as u64;
            assert!(crate::braid::braid_equal(&BraidWord::product(&bs), &infinity_braid(d)), "{m},{n}");
        }
    }

    #[test]
    fn permutations_cover_all_orders() {
        let mut p = vec![0, 1, 2];
        let mut k = 1;
        while next_permutation(&mut p) {
            k += 1;
        }
        assert_eq!(k, 6);
        assert_eq!(p, vec![2, 1, 0]);
    }

    #[test]
    fn gamma3_schema_needs_one_reordering() {
        let (rels, bs) = assemble(&chain_schema(3, 3).unwrap(), 2).unwrap();
        assert_eq!(bs.len(), 4);
        assert!(matches!(rels.last(), Some(Relation::Completion { exponent: 3 })));
        assert!(bs.iter().all(|b| fiber_type(b) == "A2"));
    }

    #[test]
    fn names() {
        assert_eq!(group_name(1, 7), "Gamma1(7)");
        assert_eq!(group_name(5, 5), "Gamma(5)");
        assert_eq!(group_name(2, 8), "Gamma2(8)");
        assert_eq!(group_name(1, 1), "Gamma1(1)");
    }
}
