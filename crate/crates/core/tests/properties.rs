mod common;

use std::sync::Arc;

use proptest::prelude::*;
use quasichar::ideal::{b_ideal_from_rows, b_row_chain};
use quasichar::{
    basis_change_matrix, build_positive_system, closed_form, coefficient_matrix, contraction,
    count_complement, is_ideal, oracle_quasi, Basis, DualPartition, Ideal, IntegerMatrix, Lattice,
    Oracle, Parity, PositiveSystem, RootKind, RootType,
};

use common::{naive_count, naive_plain, sys};

fn system_strategy(max_rank: usize) -> impl Strategy<Value = Arc<PositiveSystem>> {
    (0..4usize)
        .prop_flat_map(move |t| {
            let t = RootType::ALL[t];
            (Just(t), t.min_rank()..=max_rank)
        })
        .prop_map(|(t, l)| sys(t, l))
}

fn ideal_strategy(max_rank: usize) -> impl Strategy<Value = Ideal> {
    (system_strategy(max_rank), prop::collection::vec(any::<prop::sample::Index>(), 0..4)).prop_map(
        |(s, gens)| {
            let g: Vec<usize> = gens.iter().map(|i| i.index(s.len())).collect();
            Ideal::generated_by(s, &g)
        },
    )
}

fn d_ideal_with_r_one(max_rank: usize) -> impl Strategy<Value = Ideal> {
    (4..=max_rank, prop::collection::vec(any::<prop::sample::Index>(), 0..4)).prop_map(|(l, gens)| {
        let s = sys(RootType::D, l);
        let mut g: Vec<usize> = gens.iter().map(|i| i.index(s.len())).collect();
        g.push(s.index_of(RootKind::Sum(1, l)).unwrap());
        g.push(s.index_of(RootKind::Diff(1, l)).unwrap());
        Ideal::generated_by(s, &g)
    })
}

fn subset(s: &PositiveSystem, bits: u128) -> Vec<usize> {
    (0..s.len()).filter(|&k| bits >> (k % 128) & 1 == 1).collect()
}

fn b_list(l: usize, bits: u64) -> (Arc<PositiveSystem>, Vec<usize>) {
    let s = sys(RootType::B, l);
    let idx = (0..s.len()).filter(|&k| bits >> k & 1 == 1).collect();
    (s, idx)
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(64))]

    #[test]
    fn t_equals_p_times_s(s in system_strategy(6), bits in any::<u128>()) {
        let idx = subset(&s, bits);
        prop_assume!(!idx.is_empty());
        let list: Vec<_> = idx.iter().map(|&k| s.root(k)).collect();
        let t = coefficient_matrix(list.iter().copied(), Basis::Orthonormal).unwrap();
        let sm = coefficient_matrix(list.iter().copied(), Basis::Simple).unwrap();
        let p = basis_change_matrix(s.rs_type(), s.rank()).unwrap();
        prop_assert_eq!(p.mul(&sm).unwrap(), t);
    }

    #[test]
    fn splitting_identity(l in 2usize..=4, bits in any::<u64>(), k in 1usize..=4, q in 1u64..=8) {
        prop_assume!(k <= l);
        let (s, mut idx) = b_list(l, bits);
        let alpha = s.index_of(RootKind::Short(k)).unwrap();
        idx.retain(|&j| j != alpha);
        let cols = |idx: &[usize]| -> IntegerMatrix {
            let c: Vec<Vec<i64>> = idx.iter().map(|&j| s.root(j).eps_coords.clone()).collect();
            IntegerMatrix::from_columns(l, &c).unwrap()
        };
        let without = cols(&idx);
        let mut with_idx = idx.clone();
        with_idx.push(alpha);
        let with = cols(&with_idx);
        let contracted = contraction(&with, with.cols() - 1).unwrap();
        prop_assert_eq!(
            count_complement(&without, q).unwrap(),
            count_complement(&with, q).unwrap() + count_complement(&contracted, q).unwrap()
        );
    }

    #[test]
    fn adding_a_column_never_increases(i in ideal_strategy(4), extra in any::<prop::sample::Index>(), q in 1u64..=7) {
        let m = i.lattice_matrix(Lattice::Integer);
        let s = i.system();
        let col = s.root(extra.index(s.len())).eps_coords[..s.rank()].to_vec();
        let bigger = m.hconcat(&IntegerMatrix::from_columns(s.rank(), &[col]).unwrap()).unwrap();
        prop_assert!(count_complement(&bigger, q).unwrap() <= count_complement(&m, q).unwrap());
    }

    #[test]
    fn kernel_matches_naive(i in ideal_strategy(4), q in 1u64..=9, shifted in any::<bool>()) {
        let m = i.lattice_matrix(Lattice::Integer);
        let offs = if shifted { i.last_simple_row() } else { vec![0; m.cols()] };
        let fast = Oracle::default().count_shifted(&m, &offs, q).unwrap();
        prop_assert_eq!(fast, naive_count(&m, &offs, q));
    }

    #[test]
    fn b_lattices_agree(l in 2usize..=4, bits in any::<u64>(), q in 1u64..=9) {
        let (s, idx) = b_list(l, bits);
        prop_assume!(!idx.is_empty());
        let list: Vec<_> = idx.iter().map(|&k| s.root(k)).collect();
        let t = coefficient_matrix(list.iter().copied(), Basis::Orthonormal).unwrap();
        let sm = coefficient_matrix(list.iter().copied(), Basis::Simple).unwrap();
        prop_assert_eq!(count_complement(&t, q).unwrap(), count_complement(&sm, q).unwrap());
    }

    #[test]
    fn partition_sums(i in ideal_strategy(7)) {
        let dp = i.dual_partition();
        prop_assert_eq!(dp.sum(), i.len());
        prop_assert_eq!(dp.max(), i.height_distribution().len());
        if i.rs_type() == RootType::A {
            return Ok(());
        }
        let sg = i.signed_graph().unwrap();
        prop_assert_eq!(sg.p.iter().sum::<usize>(), i.len());
        for k in 0..i.rank() {
            prop_assert_eq!(sg.p[k], sg.p_plus[k] + sg.p_minus[k] + sg.p_zero[k]);
            prop_assert!(sg.p_minus[k] < i.rank() - k && sg.p_plus[k] < i.rank() - k);
        }
        match i.rs_type() {
            RootType::B | RootType::C => prop_assert_eq!(DualPartition::from_parts(sg.p), dp),
            RootType::D => {
                let d: Vec<usize> = (0..i.rank())
                    .map(|k| sg.p_minus[k] + if k > 0 { sg.p_plus[k - 1] } else { 0 })
                    .collect();
                prop_assert_eq!(d.iter().sum::<usize>(), i.len());
            }
            RootType::A => unreachable!(),
        }
    }

    #[test]
    fn d_ideals_with_r_one(i in d_ideal_with_r_one(7)) {
        let l = i.rank();
        let sg = i.signed_graph().unwrap();
        for k in 0..l - 1 {
            prop_assert_eq!(sg.p_minus[k], l - k - 1);
        }
        // with both e1 +- el present the shifted row counts are the dual partition
        let d: Vec<usize> = (0..l)
            .map(|k| sg.p_minus[k] + if k > 0 { sg.p_plus[k - 1] } else { 0 })
            .collect();
        prop_assert_eq!(DualPartition::from_parts(d), i.dual_partition());
        let tau = |n: usize, k: usize| i.contains_kind(RootKind::Sum(n, k));
        for n in 1..l {
            for k in n + 1..=l {
                if n + 1 < k && tau(n, k) {
                    prop_assert!(tau(n + 1, k));
                }
                if k < l && tau(n, k) {
                    prop_assert!(tau(n, k + 1));
                }
            }
        }
    }

    #[test]
    fn row_prefix_subsets_are_ideals(m in 2usize..=6, s in 2usize..=7, raw in prop::collection::vec(0usize..16, 6)) {
        prop_assume!(s <= m + 1);
        let full_len = |i: usize| b_row_chain(m, i).len();
        let mut rows = vec![0usize; m];
        for i in (1..=m).rev() {
            rows[i - 1] = if i + 1 >= s {
                full_len(i)
            } else {
                // p_i <= p_{i+1} + 1, within the chain
                let cap = (rows[i] + 1).min(full_len(i));
                raw[i - 1] % (cap + 1)
            };
        }
        let ideal = b_ideal_from_rows(sys(RootType::B, m), &rows);
        prop_assert!(ideal.is_ok(), "{:?}: {:?}", rows, ideal.err());
        let ideal = ideal.unwrap();
        prop_assert!(is_ideal(ideal.system(), ideal.mask()));
    }
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(24))]

    #[test]
    fn round_trip_and_closed_forms(i in ideal_strategy(4), lattice in prop_oneof![Just(Lattice::Integer), Just(Lattice::Root)]) {
        let qp = oracle_quasi(&i, lattice, &Oracle::default()).unwrap();
        for c in qp.constituents() {
            prop_assert!(c.is_monic() && c.degree() == Some(i.rank()));
        }
        let m = i.lattice_matrix(lattice);
        for q in 1..=20 {
            prop_assert_eq!(qp.eval(q), naive_plain(&m, q) as i128);
        }
        prop_assert_eq!(qp.constituent_for(1), &closed_form(&i, lattice, Parity::Odd).unwrap());
        prop_assert_eq!(qp.constituent_for(2), &closed_form(&i, lattice, Parity::Even).unwrap());
    }
}

#[test]
fn full_rank_five_round_trip() {
    for t in RootType::ALL {
        let full = Ideal::full(Arc::new(build_positive_system(t, 5).unwrap()));
        for lattice in [Lattice::Integer, Lattice::Root] {
            let qp = oracle_quasi(&full, lattice, &Oracle::default()).unwrap();
            let m = full.lattice_matrix(lattice);
            for q in 17..=20 {
                assert_eq!(qp.eval(q), count_complement(&m, q).unwrap() as i128, "{t}5 {lattice} q={q}");
            }
        }
    }
}

fn shifted_rows(i: &Ideal) -> Vec<usize> {
    let sg = i.signed_graph().unwrap();
    (0..i.rank())
        .map(|k| sg.p_minus[k] + if k > 0 { sg.p_plus[k - 1] } else { 0 })
        .collect()
}

#[test]
fn d_shifted_rows_give_dual_partition_when_r_is_one() {
    for l in 4..=6 {
        let s = sys(RootType::D, l);
        for i in quasichar::enumerate_ideals(&s) {
            if i.contains_kind(RootKind::Sum(1, l)) && i.contains_kind(RootKind::Diff(1, l)) {
                assert_eq!(DualPartition::from_parts(shifted_rows(&i)), i.dual_partition(), "{i:?}");
            }
        }
    }
}

#[test]
fn d_shifted_rows_differ_for_small_ideals() {
    let s = sys(RootType::D, 4);
    let g = [s.parse_root("e2+e4").unwrap()];
    let i = Ideal::generated_by(s, &g);
    assert_eq!(i.len(), 3);
    assert_eq!(i.dual_partition(), DualPartition::from_parts(vec![2, 1, 0, 0]));
    assert_eq!(DualPartition::from_parts(shifted_rows(&i)), DualPartition::from_parts(vec![1, 1, 1, 0]));
}
