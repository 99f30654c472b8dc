use proptest::prelude::*;

use setpart_core::motzkin::{decode, encode, reflect, LabeledMotzkinPath};
use setpart_core::partition::{
    classify, rebuild_from_profile, trace_profile, BlockWord, OrderedSetPartition, RgfWord,
    SetPartition,
};
use setpart_core::qseries::{q_int, q_stirling, QPolynomial};
use setpart_core::statistics::{coord_sum, linv_closers, linv_openers, rinv_closers, CoordKind, MakFamily};
use setpart_core::{phi, phi_i};

/// Restricted growth words of length up to `max_len`.
fn partition(max_len: usize) -> impl Strategy<Value = SetPartition> {
    prop::collection::vec(any::<u32>(), 0..=max_len).prop_map(|choices| {
        let mut max = 0;
        let word: Vec<usize> = choices
            .iter()
            .map(|&c| {
                let w = c as usize % (max + 1) + 1;
                max = max.max(w);
                w
            })
            .collect();
        SetPartition::from_word(word).unwrap()
    })
}

fn ordered(max_len: usize) -> impl Strategy<Value = OrderedSetPartition> {
    partition(max_len).prop_flat_map(|p| {
        let order: Vec<usize> = (1..=p.num_blocks()).collect();
        Just(order)
            .prop_shuffle()
            .prop_map(move |o| p.arrange(&o).unwrap())
    })
}

fn polynomial() -> impl Strategy<Value = QPolynomial> {
    prop::collection::vec(-50i64..50, 0..8)
        .prop_map(|c| QPolynomial::from_dense(c.into_iter().map(Into::into).collect()))
}

proptest! {
    #[test]
    fn text_round_trip(p in partition(16)) {
        let text = p.to_string();
        prop_assert_eq!(text.parse::<SetPartition>().unwrap(), p.clone());
        let rgf = p.to_rgf();
        prop_assert_eq!(rgf.to_string().parse::<RgfWord>().unwrap(), rgf.clone());
        prop_assert_eq!(SetPartition::from_rgf(&rgf), p.clone());
        let json = serde_json::to_string(&p).unwrap();
        prop_assert_eq!(serde_json::from_str::<SetPartition>(&json).unwrap(), p);
    }

    #[test]
    fn ordered_text_round_trip(op in ordered(12)) {
        prop_assert_eq!(op.to_string().parse::<OrderedSetPartition>().unwrap(), op.clone());
        let canon = op.canonical();
        prop_assert_eq!(canon.to_string(), {
            let mut b = op.blocks();
            b.sort();
            SetPartition::from_blocks(&b).unwrap().to_string()
        });
    }

    #[test]
    fn profile_determines_partition(p in partition(16)) {
        let prof = trace_profile(&p);
        prop_assert_eq!(rebuild_from_profile(&prof.kinds, &prof.gamma).unwrap(), p.clone());
        for i in 0..p.n() {
            prop_assert!(prof.gamma[i] >= 1);
        }
    }

    #[test]
    fn classes_partition_the_ground_set(p in partition(16)) {
        let c = classify(&p);
        let total = c.opener_nonsingletons.len() + c.closer_nonsingletons.len() + c.passants.len() + c.singletons.len();
        prop_assert_eq!(total, p.n());
        prop_assert_eq!(c.openers.len(), p.num_blocks());
        prop_assert_eq!(c.closers.len(), p.num_blocks());
    }

    #[test]
    fn path_round_trip(p in partition(16)) {
        let path = encode(&p);
        prop_assert_eq!(decode(&path).unwrap(), p.clone());
        let text = path.to_string();
        prop_assert_eq!(text.parse::<LabeledMotzkinPath>().unwrap(), path.clone());
        let json = serde_json::to_string(&path).unwrap();
        prop_assert_eq!(serde_json::from_str::<LabeledMotzkinPath>(&json).unwrap(), path.clone());
        let back = reflect(&reflect(&path).unwrap()).unwrap();
        prop_assert_eq!(back, path);
    }

    #[test]
    fn phi_is_an_involution(p in partition(16)) {
        let image = phi(&p).unwrap();
        prop_assert_eq!(phi(&image).unwrap(), p.clone());
        prop_assert_eq!(MakFamily::of(&p).mak, MakFamily::of(&image).makp);
        prop_assert_eq!(decode(&reflect(&encode(&p)).unwrap()).unwrap(), image);
    }

    #[test]
    fn mak_forms_agree(p in partition(20)) {
        let f = MakFamily::of(&p);
        prop_assert_eq!(f.mak, f.lmakp);
        prop_assert_eq!(f.makp, f.lmak);
        let los = coord_sum(&p, CoordKind::Los);
        prop_assert_eq!(f.mak, los - rinv_closers(&p) + linv_openers(&p));
        let nk = (p.n() * p.num_blocks().saturating_sub(1)) as i64;
        prop_assert_eq!(f.makp, nk - los - linv_closers(&p));
    }

    #[test]
    fn ordered_mak_forms_agree(op in ordered(14)) {
        let f = MakFamily::of(&op);
        prop_assert_eq!(f.mak, f.lmakp);
        prop_assert_eq!(f.makp, f.lmak);
        prop_assert!(f.mak >= 0 && f.makp >= 0);
    }

    #[test]
    fn phi_i_keeps_openers(p in partition(14), i in 1usize..14) {
        prop_assume!(p.num_blocks() >= 2);
        let i = 1 + i % (p.num_blocks() - 1);
        let image = phi_i(&p, i).unwrap();
        prop_assert_eq!(image.block_bounds().0, p.block_bounds().0);
        prop_assert_eq!(image.num_blocks(), p.num_blocks());
    }

    #[test]
    fn polynomial_text_and_json_round_trip(a in polynomial()) {
        prop_assert_eq!(a.to_string().parse::<QPolynomial>().unwrap(), a.clone());
        let json = serde_json::to_string(&a).unwrap();
        prop_assert_eq!(serde_json::from_str::<QPolynomial>(&json).unwrap(), a);
    }

    #[test]
    fn polynomial_ring_laws(a in polynomial(), b in polynomial(), c in polynomial()) {
        prop_assert_eq!(&a * &b, &b * &a);
        prop_assert_eq!(&(&a + &b) * &c, &(&a * &c) + &(&b * &c));
        prop_assert_eq!(&(&a + &b) - &b, a.clone());
        prop_assert_eq!(&a * &QPolynomial::one(), a);
    }

    #[test]
    fn stirling_recurrence_and_specialization(n in 1usize..14, k in 1usize..14) {
        let lhs = q_stirling(n, k);
        let rhs = &q_stirling(n - 1, k - 1).shift_up(k - 1) + &(&q_int(k) * &q_stirling(n - 1, k));
        prop_assert_eq!(&lhs, &rhs);
        prop_assert_eq!(lhs.eval_at_one(), setpart_core::stirling2(n, k).into());
    }
}
