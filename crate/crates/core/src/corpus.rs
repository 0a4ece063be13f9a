//! Small named dg categories used throughout tests, benches and the CLI, plus
//! a generator of random valid finite dg categories.

use rand::Rng;

use crate::dgcore::{pushout_attach, unit_category, CategoryBuilder, DgCategory, Finiteness, Presentation};
use crate::exactfield::FieldSpec;

pub fn unit(field: FieldSpec) -> DgCategory {
    unit_category(field)
}

/// `k[x]/(x²)` on one object `*`, concentrated in degree 0.
pub fn dual_numbers(field: FieldSpec) -> DgCategory {
    let mut b = CategoryBuilder::new(field);
    let o = b.object("*");
    b.basis(o, o, "x", 0);
    b.build().expect("dual numbers are well formed")
}

/// The path algebra of the quiver `1 -> 2` with arrow `a`.
pub fn path_a2(field: FieldSpec) -> DgCategory {
    let mut b = CategoryBuilder::new(field);
    let x = b.object("1");
    let y = b.object("2");
    b.basis(x, y, "a", 0);
    b.build().expect("path algebra is well formed")
}

/// The product `k × k`: two objects, no morphisms between them.
pub fn product_kk(field: FieldSpec) -> DgCategory {
    let mut b = CategoryBuilder::new(field);
    b.object("1");
    b.object("2");
    b.build().expect("product is well formed")
}

/// The named corpus: `(name, category)`.
pub fn named(field: FieldSpec) -> Vec<(&'static str, DgCategory)> {
    vec![
        ("unit", unit(field)),
        ("kxk", product_kk(field)),
        ("path_a2", path_a2(field)),
        ("dual_numbers", dual_numbers(field)),
    ]
}

/// The saturated members of [`named`].
pub fn saturated(field: FieldSpec) -> Vec<(&'static str, DgCategory)> {
    named(field).into_iter().filter(|(n, _)| *n != "dual_numbers").collect()
}

/// A random valid closed dg category with total hom dimension at most
/// `max_total_dim`, realized from a random presentation. Generators get
/// degrees in `-1..=1`; most length-two words are killed by monomial
/// relations, and with some probability a cell is attached to kill a closed
/// generator.
pub fn random_category<R: Rng>(rng: &mut R, field: FieldSpec, max_total_dim: usize) -> DgCategory {
    random_realization(rng, field, max_total_dim, -1..=1, true)
}

/// A random quiver algebra with monomial relations, concentrated in degree 0
/// with zero differential, of total hom dimension at most `max_total_dim`.
pub fn random_quiver_algebra<R: Rng>(rng: &mut R, field: FieldSpec, max_total_dim: usize) -> DgCategory {
    random_realization(rng, field, max_total_dim, 0..=0, false)
}

/// A random quiver algebra on two or three objects whose arrows all go from
/// a lower to a higher object, so its path algebra has finite global
/// dimension; a random subset of length-two words is killed.
pub fn random_acyclic_quiver<R: Rng>(rng: &mut R, field: FieldSpec, max_total_dim: usize) -> DgCategory {
    loop {
        let mut p = Presentation::new(field);
        let n_obj = rng.gen_range(2..=3);
        for i in 0..n_obj {
            p.add_object(&format!("o{i}")).expect("fresh object");
        }
        let n_gen = rng.gen_range(1..=3);
        for g in 0..n_gen {
            let s = rng.gen_range(0..n_obj - 1);
            let t = rng.gen_range(s + 1..n_obj);
            p.add_generator(&format!("g{g}"), s, t, 0).expect("fresh generator");
        }
        let gens = p.generators().to_vec();
        for a in 0..gens.len() {
            for b in 0..gens.len() {
                if gens[b].target == gens[a].source && rng.gen_bool(0.5) {
                    let r = p
                        .parse_poly(&format!("{}*{}", gens[a].label, gens[b].label), None)
                        .expect("composable word");
                    p.add_relation(r).expect("homogeneous monomial");
                }
            }
        }
        let Ok(c) = p.realize(4, 2) else { continue };
        if c.finiteness() == Finiteness::Closed && c.total_dim() <= max_total_dim && c.validate().is_valid() {
            return c;
        }
    }
}

fn random_realization<R: Rng>(
    rng: &mut R,
    field: FieldSpec,
    max_total_dim: usize,
    degrees: std::ops::RangeInclusive<i64>,
    cells: bool,
) -> DgCategory {
    loop {
        let mut p = Presentation::new(field);
        let n_obj = rng.gen_range(1..=2);
        for i in 0..n_obj {
            p.add_object(&format!("o{i}")).expect("fresh object");
        }
        let n_gen = rng.gen_range(0..=2);
        for g in 0..n_gen {
            let s = rng.gen_range(0..n_obj);
            let t = rng.gen_range(0..n_obj);
            let d = rng.gen_range(degrees.clone());
            p.add_generator(&format!("g{g}"), s, t, d).expect("fresh generator");
        }
        let gens = p.generators().to_vec();
        for a in 0..gens.len() {
            for b in 0..gens.len() {
                if gens[b].target == gens[a].source && rng.gen_bool(0.8) {
                    let r = p
                        .parse_poly(&format!("{}*{}", gens[a].label, gens[b].label), None)
                        .expect("composable word");
                    p.add_relation(r).expect("homogeneous monomial");
                }
            }
        }
        if cells && !gens.is_empty() && rng.gen_bool(0.4) {
            let g = &gens[rng.gen_range(0..gens.len())];
            let f = p.parse_poly(&g.label, None).expect("generator");
            if let Ok(q) = pushout_attach(&p, g.degree + 1, &f) {
                p = q;
            }
        }
        let Ok(c) = p.realize(4, 2) else { continue };
        if c.finiteness() == Finiteness::Closed && c.total_dim() <= max_total_dim && c.validate().is_valid() {
            return c;
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use rand::SeedableRng;
    use rand_chacha::ChaCha8Rng;

    #[test]
    fn corpus_is_valid() {
        for (name, c) in named(FieldSpec::Rationals) {
            assert!(c.validate().is_valid(), "{name}: {}", c.validate());
        }
        assert_eq!(dual_numbers(FieldSpec::Rationals).total_dim(), 2);
    }

    #[test]
    fn random_categories_are_valid_and_small() {
        let mut rng = ChaCha8Rng::seed_from_u64(7);
        for _ in 0..30 {
            let c = random_category(&mut rng, FieldSpec::Rationals, 4);
            assert!(c.total_dim() <= 4);
            assert!(c.validate().is_valid());
        }
    }
}
