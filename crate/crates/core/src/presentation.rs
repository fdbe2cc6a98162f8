//! Zariski-van Kampen presentations of the curve groups.

use std::fmt::Write as _;

use crate::braid::{artin_apply, FreeWord};
use crate::exact::{smith_normal_form, FinAbGroup, IntMat};
use crate::invariants::MonodromyData;
use crate::{Error, Result};

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Flavor {
    Affine,
    Projective,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Presentation {
    pub relators: Vec<FreeWord>,
    pub flavor: Flavor,
}

impl Presentation {
    pub fn generators(&self) -> [&'static str; 3] {
        ["a1", "a2", "a3"]
    }

    fn push(&mut self, w: FreeWord) {
        if !w.is_empty() {
            self.relators.push(w);
        }
    }
}

fn indices(all_three: bool) -> &'static [i8] {
    if all_three {
        &[1, 2, 3]
    } else {
        &[1, 2]
    }
}

/// Relators `b(a_j) a_j^-1`, plus `rho^d` in the projective case.
pub fn van_kampen(md: &MonodromyData, flavor: Flavor, all_three: bool) -> Presentation {
    let mut p = Presentation { relators: Vec::new(), flavor };
    for b in &md.braids {
        for &j in indices(all_three) {
            let a = FreeWord::gen(j);
            p.push(artin_apply(b, &a).concat(&a.inverse()));
        }
    }
    if flavor == Flavor::Projective {
        p.push(FreeWord::rho().pow(md.d as i64));
    }
    p
}

/// Relators `k_i a_j k_i^-1 = b_i(a_j)`, written as `b_i(a_j) k_i a_j^-1 k_i^-1`
/// so that trivial slopes reproduce `van_kampen`; plus `k_r ... k_1 rho^d`
/// in the projective case.
pub fn van_kampen_with_slopes(md: &MonodromyData, flavor: Flavor, all_three: bool) -> Result<Presentation> {
    let slopes = md.slopes.as_ref().ok_or_else(|| Error::Invalid("slopes required".into()))?;
    if slopes.len() != md.braids.len() {
        return Err(Error::Validation("slope count differs from braid count".into()));
    }
    let mut p = Presentation { relators: Vec::new(), flavor };
    for (b, k) in md.braids.iter().zip(slopes) {
        for &j in indices(all_three) {
            let a = FreeWord::gen(j);
            p.push(artin_apply(b, &a).concat(&a.inverse().conjugate(k)));
        }
    }
    if flavor == Flavor::Projective {
        let tail = slopes.iter().rev().fold(FreeWord::identity(), |acc, k| acc.concat(k));
        p.push(tail.concat(&FreeWord::rho().pow(md.d as i64)));
    }
    Ok(p)
}

pub fn abelianization(p: &Presentation) -> FinAbGroup {
    if p.relators.is_empty() {
        return FinAbGroup::free(3);
    }
    let cols: Vec<Vec<_>> = p
        .relators
        .iter()
        .map(|r| r.exponent_sums().iter().map(|&e| crate::exact::big(e)).collect())
        .collect();
    let m = IntMat::from_cols(3, &cols);
    FinAbGroup::from_smith(3, &smith_normal_form(&m))
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum PresentationFormat {
    Text,
    Cas,
}

pub fn export_presentation(p: &Presentation, format: PresentationFormat) -> String {
    let mut out = String::new();
    match format {
        PresentationFormat::Text => {
            let kind = match p.flavor {
                Flavor::Affine => "affine",
                Flavor::Projective => "projective",
            };
            let _ = writeln!(out, "< a1, a2, a3 | {} relators > ({kind})", p.relators.len());
            for (i, r) in p.relators.iter().enumerate() {
                let _ = writeln!(out, "  r{} = {}", i + 1, r);
            }
        }
        PresentationFormat::Cas => {
            out.push_str("gens a1 a2 a3\n");
            for r in &p.relators {
                let _ = writeln!(out, "{r}");
            }
        }
    }
    out
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::braid::BraidWord;

    #[test]
    fn free_presentation() {
        let md = MonodromyData::new(vec![], 0);
        let p = van_kampen(&md, Flavor::Affine, false);
        assert!(p.relators.is_empty());
        assert_eq!(abelianization(&p), FinAbGroup::free(3));
        assert_eq!(export_presentation(&p, PresentationFormat::Cas), "gens a1 a2 a3\n");
    }

    #[test]
    fn projective_adds_rho_power() {
        let md = MonodromyData::new(vec![], 2);
        let p = van_kampen(&md, Flavor::Projective, false);
        assert_eq!(p.relators, vec![FreeWord::rho().pow(2)]);
    }

    #[test]
    fn trivial_slopes_match() {
        let bs = vec![BraidWord::parse("s1^3").unwrap(), BraidWord::parse("s2^3").unwrap()];
        let md = MonodromyData::with_slopes(bs.clone(), 0, vec![FreeWord::identity(); 2]);
        let a = van_kampen_with_slopes(&md, Flavor::Affine, false).unwrap();
        assert_eq!(a.relators, van_kampen(&MonodromyData::new(bs, 0), Flavor::Affine, false).relators);
    }

    #[test]
    fn slope_substitution() {
        let s1 = BraidWord::parse("s1").unwrap();
        let rho2 = FreeWord::rho().pow(2);
        let md = MonodromyData::with_slopes(vec![s1.clone()], 0, vec![rho2.clone()]);
        let p = van_kampen_with_slopes(&md, Flavor::Affine, true).unwrap();
        for (j, r) in p.relators.iter().enumerate() {
            let a = FreeWord::gen(j as i8 + 1);
            assert_eq!(r.inverse(), a.conjugate(&rho2).concat(&artin_apply(&s1, &a).inverse()));
        }
    }

    #[test]
    fn projective_slope_tail_is_reversed() {
        let k1 = FreeWord::parse("a1^2").unwrap();
        let k2 = FreeWord::parse("a2^2").unwrap();
        let md = MonodromyData::with_slopes(vec![BraidWord::identity(); 2], 2, vec![k1.clone(), k2.clone()]);
        let p = van_kampen_with_slopes(&md, Flavor::Projective, false).unwrap();
        assert_eq!(p.relators.last().unwrap(), &k2.concat(&k1).concat(&FreeWord::rho().pow(2)));
    }
}
