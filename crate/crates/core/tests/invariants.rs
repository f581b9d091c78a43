use std::sync::OnceLock;

use proptest::prelude::*;

use matroid_complexes::activity::{link_decomposition, OrderedMatroid};
use matroid_complexes::bits::full_mask;
use matroid_complexes::census::{emit_catalog, parse_catalog, Census};
use matroid_complexes::complex::{Face, SimplicialComplex};
use matroid_complexes::lattice::GradedLattice;
use matroid_complexes::matroid::Matroid;

fn classes() -> &'static [Matroid] {
    static CLASSES: OnceLock<Vec<Matroid>> = OnceLock::new();
    CLASSES.get_or_init(|| Census::new(6).loopless_up_to(6).unwrap())
}

/// A loopless class on at most six elements under a random labelling.
fn matroid() -> impl Strategy<Value = Matroid> {
    (0..classes().len(), any::<u64>()).prop_map(|(i, seed)| {
        let m = &classes()[i];
        m.relabel(&shuffle(m.n(), seed))
    })
}

fn shuffle(n: usize, seed: u64) -> Vec<usize> {
    let mut perm: Vec<usize> = (0..n).collect();
    let mut s = seed | 1;
    for i in (1..n).rev() {
        s ^= s << 13;
        s ^= s >> 7;
        s ^= s << 17;
        perm.swap(i, (s % (i as u64 + 1)) as usize);
    }
    perm
}

fn complex() -> impl Strategy<Value = SimplicialComplex> {
    prop::collection::vec(1u128..1 << 7, 1..8)
        .prop_map(|facets| SimplicialComplex::new(7, facets.into_iter().map(Face::from_bits)).unwrap())
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(128))]

    #[test]
    fn f_and_h_round_trip(c in complex()) {
        let f = c.f_vector().unwrap();
        prop_assert_eq!(c.h_vector().unwrap().to_f().unwrap(), f);
    }

    #[test]
    fn h_sums_to_top_face_count_for_pure_complexes(m in matroid()) {
        let c = m.independence_complex();
        prop_assert_eq!(c.h_vector().unwrap().sum() as usize, m.basis_count());
    }

    #[test]
    fn canonical_form_ignores_labels(m in matroid(), seed in any::<u64>()) {
        let other = m.relabel(&shuffle(m.n(), seed));
        prop_assert_eq!(other.canonical_form(), m.canonical_form());
        prop_assert!(other.is_isomorphic(&m));
        prop_assert_eq!(other.independence_complex().h_vector().unwrap(), m.independence_complex().h_vector().unwrap());
    }

    #[test]
    fn broken_circuit_h_does_not_depend_on_the_order(m in matroid(), seed in any::<u64>()) {
        let natural = OrderedMatroid::natural(m.clone()).bc_complex().unwrap();
        let other = OrderedMatroid::new(m.clone(), shuffle(m.n(), seed)).unwrap().bc_complex().unwrap();
        prop_assert_eq!(natural.h_vector().unwrap(), other.h_vector().unwrap());
    }

    #[test]
    fn removing_cone_points_keeps_h(m in matroid(), seed in any::<u64>()) {
        let om = OrderedMatroid::new(m.clone(), shuffle(m.n(), seed)).unwrap();
        let c = om.bc_complex().unwrap();
        let reduced = c.remove_cone_points();
        prop_assert!(reduced.cone_points().is_empty());
        prop_assert_eq!(c.h_vector().unwrap().trimmed(), reduced.h_vector().unwrap().trimmed());
    }

    #[test]
    fn link_terms_add_up(m in matroid(), pick in any::<prop::sample::Index>()) {
        let b = m.bases()[pick.index(m.basis_count())];
        let dec = link_decomposition(&m, b).unwrap();
        prop_assert_eq!(dec.total, m.independence_complex().h_vector().unwrap());
    }

    #[test]
    fn passive_sizes_count_h(m in matroid(), seed in any::<u64>()) {
        let om = OrderedMatroid::new(m.clone(), shuffle(m.n(), seed)).unwrap();
        let p = om.int_poset();
        prop_assert!(p.is_antisymmetric());
        prop_assert_eq!(p.rank_counts(), m.independence_complex().h_vector().unwrap().into_vec());
    }

    #[test]
    fn nbc_bases_count_the_mobius_number(m in matroid(), seed in any::<u64>()) {
        let l = GradedLattice::of_flats(&m).unwrap();
        prop_assert!(l.is_geometric().is_ok());
        let nbc = OrderedMatroid::new(m.clone(), shuffle(m.n(), seed)).unwrap().nbc_bases().unwrap().len();
        prop_assert_eq!(nbc as u64, l.mobius().unsigned_abs());
    }

    #[test]
    fn minors_satisfy_the_rank_axioms(m in matroid(), mask in any::<u64>()) {
        let a = mask & full_mask(m.n());
        prop_assume!(a != m.ground());
        let del = m.deletion(a).unwrap();
        let con = m.contraction(a).unwrap();
        prop_assert!(del.check_rank_axioms().is_ok());
        prop_assert!(con.check_rank_axioms().is_ok());
        prop_assert_eq!(con.rank(), m.rank() - m.rank_of(a));
        prop_assert_eq!(del.rank(), m.rank_of(m.ground() & !a));
        prop_assert_eq!(con.n() + del.n(), 2 * m.n() - 2 * a.count_ones() as usize);
    }

    #[test]
    fn catalog_lines_round_trip(m in matroid()) {
        let text = emit_catalog(m.n(), m.rank(), std::slice::from_ref(&m));
        let back = parse_catalog(&text).unwrap();
        prop_assert_eq!(&back.matroids[0], &m);
    }
}
