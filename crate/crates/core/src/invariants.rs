//! Invariants of a trigonal curve computed from its braid monodromy:
//! dihedral quotients, components, Alexander data, torsion counts.

use num_bigint::BigInt;
use num_traits::{One, ToPrimitive};
use serde_json::{json, Value};

use crate::braid::{braid_equal, braid_to_sl2, burau, infinity_braid, BraidWord, FreeWord};
use crate::exact::{big, lattice_sum, laurent_gcd, quotient_of, smith_normal_form, FinAbGroup, IntMat, Lattice2, LaurentPoly};
use crate::modular::{image_lattice, ModularMatrix};
use crate::{Error, Result};

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct MonodromyData {
    pub braids: Vec<BraidWord>,
    pub d: u64,
    pub slopes: Option<Vec<FreeWord>>,
}

impl MonodromyData {
    pub fn new(braids: Vec<BraidWord>, d: u64) -> Self {
        MonodromyData { braids, d, slopes: None }
    }

    pub fn with_slopes(braids: Vec<BraidWord>, d: u64, slopes: Vec<FreeWord>) -> Self {
        MonodromyData { braids, d, slopes: Some(slopes) }
    }

    /// `"B1;B2;..."` in the braid grammar, optional `"W1;W2;..."` slopes.
    pub fn parse(braids: &str, d: u64, slopes: Option<&str>) -> Result<Self> {
        let split = |s: &str| -> Vec<String> {
            if s.trim().is_empty() {
                Vec::new()
            } else {
                s.split(';').map(|x| x.trim().to_string()).collect()
            }
        };
        let bs = split(braids).iter().map(|s| BraidWord::parse(s)).collect::<Result<Vec<_>>>()?;
        let slopes = slopes.map(|s| split(s).iter().map(|w| FreeWord::parse(w)).collect::<Result<Vec<_>>>()).transpose()?;
        Ok(MonodromyData { braids: bs, d, slopes })
    }

    pub fn product(&self) -> BraidWord {
        BraidWord::product(&self.braids)
    }

    /// Checks the infinity identity and slope parity. With `strict = false`
    /// a failing infinity identity is returned as a warning instead.
    pub fn validate(&self, strict: bool) -> Result<Vec<String>> {
        let mut warnings = Vec::new();
        if let Some(sl) = &self.slopes {
            if sl.len() != self.braids.len() {
                return Err(Error::Validation("slope count differs from braid count".into()));
            }
            if let Some(w) = sl.iter().find(|w| w.degree() % 2 != 0) {
                return Err(Error::Validation(format!("slope {w} has odd degree")));
            }
        }
        if !braid_equal(&self.product(), &infinity_braid(self.d)) {
            let msg = format!("product of braids is not (s2 s1)^{}", 3 * self.d);
            if strict {
                return Err(Error::Validation(msg));
            }
            warnings.push(msg);
        }
        Ok(warnings)
    }

    pub fn sl2_images(&self) -> Vec<ModularMatrix> {
        self.braids.iter().map(braid_to_sl2).collect()
    }
}

/// Image of an even-degree word in `H = Za + Zb`, evaluated in `H x| Z/2`
/// with `a1 -> (0,0)`, `a2 -> (1,0)`, `a3 -> (0,-1)`.
pub fn dihedral_project(w: &FreeWord) -> Result<[i64; 2]> {
    if w.degree() % 2 != 0 {
        return Err(Error::Invalid(format!("{w} has odd degree")));
    }
    const H: [[i64; 2]; 3] = [[0, 0], [1, 0], [0, -1]];
    let mut h = [0i64, 0];
    let mut flip = false;
    // each a_i is an involution of the semidirect product
    for &l in w.letters() {
        let v = H[(l.unsigned_abs() - 1) as usize];
        let s = if flip { -1 } else { 1 };
        h = [h[0] + s * v[0], h[1] + s * v[1]];
        flip = !flip;
    }
    Ok(h)
}

/// `H = sum Im(g_i - id)` over the SL(2,Z) images of the braids.
pub fn uniform_lattice(md: &MonodromyData) -> Lattice2 {
    let ls: Vec<Lattice2> = md.sl2_images().iter().map(image_lattice).collect();
    lattice_sum(&ls)
}

pub fn maximal_uniform_quotient(md: &MonodromyData) -> FinAbGroup {
    quotient_of(&uniform_lattice(md))
}

/// `(Q_afn, Q_proj)`; the projective quotient only exists for even `d`.
pub fn generalized_quotients(md: &MonodromyData) -> Result<(FinAbGroup, Option<FinAbGroup>)> {
    let slopes = md.slopes.as_ref().ok_or_else(|| Error::Invalid("slopes required".into()))?;
    let kappa = slopes.iter().map(dihedral_project).collect::<Result<Vec<_>>>()?;
    let to_big = |v: [i64; 2]| [big(v[0]), big(v[1])];
    let mut vs: Vec<[BigInt; 2]> = uniform_lattice(md).generators().to_vec();
    vs.extend(kappa.iter().map(|k| to_big([2 * k[0], 2 * k[1]])));
    let afn = Lattice2::from_vectors(&vs);
    let proj = (md.d % 2 == 0).then(|| {
        let s = kappa.iter().fold([0i64, 0], |a, k| [a[0] + k[0], a[1] + k[1]]);
        let mut ws = afn.generators().to_vec();
        ws.push(to_big(s));
        quotient_of(&Lattice2::from_vectors(&ws))
    });
    Ok((quotient_of(&afn), proj))
}

/// Orbits of the mod-2 monodromy on the three nonzero vectors of `(Z/2)^2`.
pub fn component_count(md: &MonodromyData) -> usize {
    const VS: [[u8; 2]; 3] = [[1, 0], [0, 1], [1, 1]];
    let idx = |v: [u8; 2]| VS.iter().position(|w| *w == v).expect("nonzero");
    let mut parent = [0usize, 1, 2];
    fn find(p: &mut [usize; 3], k: usize) -> usize {
        let mut r = k;
        while p[r] != r {
            r = p[r];
        }
        r
    }
    for g in md.sl2_images() {
        let r = g.residues(2).map(|x| x as u8);
        for (i, v) in VS.iter().enumerate() {
            let w = [(r[0] * v[0] + r[1] * v[1]) % 2, (r[2] * v[0] + r[3] * v[1]) % 2];
            let (a, b) = (find(&mut parent, i), find(&mut parent, idx(w)));
            parent[a.max(b)] = a.min(b);
        }
    }
    (0..3).filter(|&i| find(&mut parent, i) == i).count()
}

/// Columns of `burau(b_i) - id` for all braids.
fn burau_columns(md: &MonodromyData) -> Vec<[LaurentPoly; 2]> {
    let mut cols = Vec::with_capacity(2 * md.braids.len());
    for b in &md.braids {
        let m = burau(b);
        let one = LaurentPoly::one();
        let d00 = &m[0][0] - &one;
        let d11 = &m[1][1] - &one;
        cols.push([d00, m[1][0].clone()]);
        cols.push([m[0][1].clone(), d11]);
    }
    cols
}

/// `Z^2` modulo the columns of `burau(b_i) - id` at `t = -1`; recomputes
/// [`maximal_uniform_quotient`] through the Burau side.
pub fn burau_minus_one_quotient(md: &MonodromyData) -> FinAbGroup {
    let cols: Vec<Vec<BigInt>> = burau_columns(md).iter().map(|c| vec![c[0].eval_unit(-1), c[1].eval_unit(-1)]).collect();
    if cols.is_empty() {
        return FinAbGroup::free(2);
    }
    FinAbGroup::from_smith(2, &smith_normal_form(&IntMat::from_cols(2, &cols)))
}

/// Order of `Lambda^2 / sum Im(burau(b_i) - id)`: gcd of the 2x2 minors.
pub fn alexander_polynomial(md: &MonodromyData) -> Result<LaurentPoly> {
    let cols = burau_columns(md);
    let mut g = LaurentPoly::zero();
    for i in 0..cols.len() {
        for j in i + 1..cols.len() {
            let minor = &(&cols[i][0] * &cols[j][1]) - &(&cols[i][1] * &cols[j][0]);
            if minor.is_zero() {
                continue;
            }
            g = laurent_gcd(&[g, minor]);
            if g.span() == Some(0) {
                return Ok(g);
            }
        }
    }
    if g.is_zero() {
        Err(Error::RankDeficient)
    } else {
        Ok(g)
    }
}

/// Underlying abelian group of the Alexander module with `t^{3d} = 1`.
pub fn alexander_abelian_invariants(md: &MonodromyData) -> Result<FinAbGroup> {
    if md.d == 0 {
        return Err(Error::Invalid("d must be at least 1".into()));
    }
    let n = 3 * md.d as usize;
    let cols = burau_columns(md);
    let mut m = IntMat::zeros(2 * n, cols.len() * n);
    let mut j = 0;
    for col in &cols {
        for k in 0..n {
            for (comp, p) in col.iter().enumerate() {
                for (e, c) in p.terms() {
                    let row = comp * n + (e + k as i64).rem_euclid(n as i64) as usize;
                    let v = m.get(row, j) + c;
                    m.set(row, j, v);
                }
            }
            j += 1;
        }
    }
    Ok(FinAbGroup::from_smith(2 * n, &smith_normal_form(&m)))
}

/// The eight maximal groups of the classification.
pub fn dihedral_maxima() -> Vec<FinAbGroup> {
    [[2, 8], [4, 4], [2, 6], [3, 6], [1, 9], [5, 5], [1, 10], [1, 7]]
        .iter()
        .map(|f| FinAbGroup::from_small(0, f))
        .collect()
}

pub fn dihedral_admissible(q: &FinAbGroup) -> bool {
    q.is_finite() && dihedral_maxima().iter().any(|t| q.is_quotient_of(t))
}

/// `(|Q| - |Q (x) Z/2|) / 2`.
pub fn z_splitting_count(q: &FinAbGroup) -> Result<u64> {
    let order = q.order().ok_or_else(|| Error::Invalid("Q is infinite".into()))?;
    let two = BigInt::one() << q.two_rank();
    let half: BigInt = (order - two) / 2;
    half.to_u64().ok_or_else(|| Error::Invalid("count overflows".into()))
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum JClass {
    Zero,
    One,
    Generic,
}

impl std::str::FromStr for JClass {
    type Err = Error;
    fn from_str(s: &str) -> Result<Self> {
        match s {
            "zero" => Ok(JClass::Zero),
            "one" => Ok(JClass::One),
            "generic" => Ok(JClass::Generic),
            _ => Err(Error::Parse(format!("j class must be zero, one or generic, got '{s}'"))),
        }
    }
}

/// Monodromy generator `(-X)^r`, `(-Y)^r` or `(-id)^r` of an isotrivial curve.
pub fn isotrivial_generator(j: JClass, r: u64) -> ModularMatrix {
    let g = match j {
        JClass::Zero => ModularMatrix::x().neg(),
        JClass::One => ModularMatrix::y().neg(),
        JClass::Generic => ModularMatrix::minus_identity(),
    };
    g.pow(r as i64)
}

pub fn isotrivial_quotient(j: JClass, r: u64) -> FinAbGroup {
    quotient_of(&image_lattice(&isotrivial_generator(j, r)))
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct OkaReport {
    pub has_d6: bool,
    pub phi6_divides_delta: bool,
    pub component_count: usize,
    /// For irreducible curves the two flags must agree.
    pub consistent: bool,
}

pub fn oka_report(md: &MonodromyData) -> OkaReport {
    let has_d6 = maximal_uniform_quotient(md).surjects_onto_cyclic(3);
    let phi6_divides_delta = match alexander_polynomial(md) {
        Ok(delta) => LaurentPoly::cyclotomic(6).divides(&delta),
        Err(_) => true,
    };
    let component_count = component_count(md);
    OkaReport { has_d6, phi6_divides_delta, component_count, consistent: component_count != 1 || has_d6 == phi6_divides_delta }
}

/// Multiplicities of `Phi_m`, `m | 3d`, in `delta`, and what is left over.
pub fn cyclotomic_factors(delta: &LaurentPoly, d: u64) -> (Vec<(u64, usize)>, LaurentPoly) {
    let n = 3 * d.max(1);
    let mut rest = delta.primitive();
    let mut out = Vec::new();
    for m in (1..=n).filter(|m| n % m == 0) {
        let phi = LaurentPoly::cyclotomic(m);
        let k = rest.multiplicity(&phi);
        if k > 0 {
            rest = rest.div_exact(&phi.pow(k as u32)).expect("exact").primitive();
            out.push((m, k));
        }
    }
    (out, rest)
}

fn prime_power_base(m: u64) -> Option<u64> {
    if m < 2 {
        return None;
    }
    let p = (2..=m).find(|p| m % p == 0)?;
    let mut k = m;
    while k % p == 0 {
        k /= p;
    }
    (k == 1).then_some(p)
}

/// If `Phi_{2m}` divides `delta` for a prime power `m = p^k`, `Q` must map onto `Z/p`.
pub fn delta_2p_consistent(delta: &LaurentPoly, q: &FinAbGroup, d: u64) -> bool {
    let (factors, _) = cyclotomic_factors(delta, d);
    factors.iter().all(|&(m2, _)| {
        if m2 % 2 != 0 {
            return true;
        }
        match prime_power_base(m2 / 2) {
            Some(p) => q.surjects_onto_cyclic(p as i64),
            None => true,
        }
    })
}

/// Singular fiber type of a local monodromy braid, from its degree and its
/// conjugacy class in SL(2,Z): `A_p`, `A0*`, `D_q`, `A0**`, `A1*`, `A2*`, `E6..E8`.
pub fn fiber_type(b: &BraidWord) -> String {
    let g = braid_to_sl2(b);
    let deg = b.degree();
    let tr = g.trace();
    let content = |h: &ModularMatrix| -> i64 {
        let [[p, q], [r, s]] = h.minus_id();
        use num_integer::Integer;
        p.gcd(&q).gcd(&r).gcd(&s).to_i64().unwrap_or(i64::MAX)
    };
    let label = if tr == big(2) {
        let w = content(&g);
        match (w, deg) {
            (0, 0) => Some("A0".to_string()),
            (1, 1) => Some("A0*".to_string()),
            (w, k) if w == k && w > 1 => Some(format!("A{}", w - 1)),
            _ => None,
        }
    } else if tr == big(-2) {
        let w = content(&g.neg());
        (deg == w + 6).then(|| format!("D{}", w + 4))
    } else {
        match (tr.to_i64(), deg) {
            (Some(1), 2) => Some("A0**".into()),
            (Some(0), 3) => Some("A1*".into()),
            (Some(-1), 4) => Some("A2*".into()),
            (Some(-1), 8) => Some("E6".into()),
            (Some(0), 9) => Some("E7".into()),
            (Some(1), 10) => Some("E8".into()),
            _ => None,
        }
    };
    label.unwrap_or_else(|| format!("?(deg {deg}, tr {tr})"))
}

pub fn group_json(g: &FinAbGroup) -> Value {
    json!({"rank": g.free_rank, "factors": g.factors.iter().map(big_json).collect::<Vec<_>>()})
}

pub fn big_json(x: &BigInt) -> Value {
    match x.to_i64() {
        Some(v) => json!(v),
        None => json!(x.to_string()),
    }
}

/// Full invariant report as JSON.
pub fn invariants_report(md: &MonodromyData) -> Value {
    let q = maximal_uniform_quotient(md);
    let (q_afn, q_proj) = match generalized_quotients(md) {
        Ok((a, p)) => (Some(a), p),
        Err(_) => (None, None),
    };
    let delta = alexander_polynomial(md);
    let alex = alexander_abelian_invariants(md).ok();
    let oka = oka_report(md);
    let cyclo = delta.as_ref().ok().map(|d| {
        let (fs, rest) = cyclotomic_factors(d, md.d);
        json!({
            "factors": fs.iter().map(|(m, k)| json!({"m": m, "multiplicity": k})).collect::<Vec<_>>(),
            "remainder": rest.to_string(),
        })
    });
    json!({
        "schema_version": crate::SCHEMA_VERSION,
        "d": md.d,
        "Q": group_json(&q),
        "Q_afn": q_afn.as_ref().map(group_json),
        "Q_proj": q_proj.as_ref().map(group_json),
        "components": component_count(md),
        "delta": delta.as_ref().ok().map(|d| d.to_string()),
        "delta_error": delta.as_ref().err().map(|e| e.to_string()),
        "delta_cyclotomic": cyclo,
        "alexander_group": alex.as_ref().map(group_json),
        "z_splitting": z_splitting_count(&q).ok(),
        "admissible": dihedral_admissible(&q),
        "oka": {
            "has_D6": oka.has_d6,
            "phi6_divides_delta": oka.phi6_divides_delta,
            "component_count": oka.component_count,
            "consistent": oka.consistent,
        },
        "fibers": md.braids.iter().map(fiber_type).collect::<Vec<_>>(),
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::braid::u;

    fn fw(s: &str) -> FreeWord {
        FreeWord::parse(s).unwrap()
    }

    #[test]
    fn projection_examples() {
        assert_eq!(dihedral_project(&fw("a2.a1")).unwrap(), [1, 0]);
        assert_eq!(dihedral_project(&fw("a1.a3")).unwrap(), [0, 1]);
        assert_eq!(dihedral_project(&fw("a3.a1")).unwrap(), [0, -1]);
        assert_eq!(dihedral_project(&fw("a1^2")).unwrap(), [0, 0]);
        assert_eq!(dihedral_project(&FreeWord::rho().pow(2)).unwrap(), [0, 0]);
        assert!(dihedral_project(&fw("a1")).is_err());
    }

    #[test]
    fn quotient_examples() {
        let md = MonodromyData::new(vec![u().pow(3)], 1);
        assert_eq!(maximal_uniform_quotient(&md), FinAbGroup::from_small(0, &[2, 2]));
        let md = MonodromyData::new(vec![], 0);
        assert_eq!(maximal_uniform_quotient(&md), FinAbGroup::free(2));
        assert!(md.validate(true).is_ok());
    }

    #[test]
    fn admissibility_and_counts() {
        assert!(dihedral_admissible(&FinAbGroup::from_small(0, &[7])));
        assert!(!dihedral_admissible(&FinAbGroup::from_small(0, &[11])));
        assert!(dihedral_admissible(&FinAbGroup::trivial()));
        assert_eq!(z_splitting_count(&FinAbGroup::from_small(0, &[5, 5])).unwrap(), 12);
        assert_eq!(z_splitting_count(&FinAbGroup::from_small(0, &[3])).unwrap(), 1);
        assert_eq!(z_splitting_count(&FinAbGroup::from_small(0, &[2])).unwrap(), 0);
        assert!(z_splitting_count(&FinAbGroup::free(1)).is_err());
    }

    #[test]
    fn isotrivial_examples() {
        assert_eq!(isotrivial_quotient(JClass::Zero, 2), FinAbGroup::from_small(0, &[3]));
        assert_eq!(isotrivial_quotient(JClass::One, 1), FinAbGroup::from_small(0, &[2]));
        assert_eq!(isotrivial_quotient(JClass::Zero, 3), FinAbGroup::from_small(0, &[2, 2]));
        assert_eq!(isotrivial_quotient(JClass::Generic, 0), FinAbGroup::free(2));
    }

    #[test]
    fn fiber_labels() {
        let b = |s: &str| BraidWord::parse(s).unwrap();
        assert_eq!(fiber_type(&b("s1")), "A0*");
        assert_eq!(fiber_type(&b("s1^4")), "A3");
        assert_eq!(fiber_type(&b("s2.s1")), "A0**");
        assert_eq!(fiber_type(&b("s1.s2.s1")), "A1*");
        assert_eq!(fiber_type(&u().pow(2)), "A2*");
        assert_eq!(fiber_type(&u().pow(4)), "E6");
        assert_eq!(fiber_type(&b("s1.s2.s1").pow(3)), "E7");
        assert_eq!(fiber_type(&u().pow(5)), "E8");
        assert_eq!(fiber_type(&b("s1").concat(&u().pow(3))), "D5");
        assert_eq!(fiber_type(&u().pow(3)), "D4");
    }
}
