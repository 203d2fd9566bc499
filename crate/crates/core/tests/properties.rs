use holonet_core::level_rank::{beta, partner, transpose};
use holonet_core::modular::conformal_weight;
use holonet_core::weights::enumerate_weights;
use holonet_core::{AffineWeight, ModularDatum, Theory, Q};
use proptest::prelude::*;

/// `(rank, level, dynkin labels)` with `rank` in 2..=6 and `level` in 1..=6.
fn weight() -> impl Strategy<Value = AffineWeight> {
    (2usize..=6, 1u32..=6).prop_flat_map(|(n, k)| {
        proptest::collection::vec(0u32..=k, n - 1).prop_filter_map("level bound", move |mut labels| {
            // Trim from the right until the labels fit under the level.
            while labels.iter().sum::<u32>() > k {
                let i = labels.iter().rposition(|&x| x > 0).unwrap();
                labels[i] -= 1;
            }
            AffineWeight::new(n, k, labels).ok()
        })
    })
}

proptest! {
    #[test]
    fn simple_current_shifts_color_by_level(w in weight()) {
        let n = w.rank() as u32;
        prop_assert_eq!(w.simple_current().color(), (w.color() + w.level()) % n);
    }

    #[test]
    fn simple_current_has_order_n(w in weight()) {
        prop_assert_eq!(w.simple_current_pow(w.rank() as i64), w.clone());
        prop_assert_eq!(w.simple_current_pow(-1).simple_current(), w);
    }

    #[test]
    fn conjugation_is_an_involution(w in weight()) {
        prop_assert_eq!(w.conjugate().conjugate(), w.clone());
        prop_assert_eq!(conformal_weight(&w.conjugate()), conformal_weight(&w));
    }

    #[test]
    fn simple_current_shifts_h_by_a_fixed_amount_mod_1(w in weight()) {
        // h(J w) - h(w) = k(n-1)/(2n) - color(w)/n  mod 1.
        let n = w.rank() as i64;
        let k = w.level() as i64;
        let diff = conformal_weight(&w.simple_current()) - conformal_weight(&w);
        let expected = Q::new(k * (n - 1), 2 * n) - Q::new(w.color() as i64, n);
        prop_assert!((diff - expected).is_integer());
    }

    #[test]
    fn transpose_is_an_involution_on_diagrams(w in weight()) {
        // The transpose lives at rank `level` and level `rank`. Rows of full
        // length `level` become full columns and drop out, so only weights
        // with a nonzero zeroth label come back unchanged.
        let n = w.rank();
        let k = w.level() as usize;
        prop_assume!(k >= 2 && w.zeroth() > 0);
        let t = transpose(&w);
        prop_assert_eq!(t.rank(), k);
        prop_assert_eq!(t.level() as usize, n);
        let back = transpose(&t);
        prop_assert_eq!(back.labels(), w.labels());
    }

    #[test]
    fn beta_lands_at_the_dual_rank_and_level(w in weight()) {
        prop_assume!(w.level() >= 2);
        let b = beta(&w);
        prop_assert_eq!(b.rank(), w.level() as usize);
        prop_assert_eq!(b.level() as usize, w.rank());
    }

    #[test]
    fn partner_weights_add_up_to_the_level_one_weight(w in weight()) {
        let n = w.rank();
        let k = w.level();
        prop_assume!(k >= 2);
        let big = n * k as usize;
        for l in 0..big as u32 {
            if let Ok(p) = partner(&w, l) {
                let target = Q::new((l as i64) * (big as i64 - l as i64), 2 * big as i64);
                prop_assert!((conformal_weight(&w) + conformal_weight(&p) - target).is_integer());
            }
        }
    }
}

#[test]
fn enumeration_is_closed_under_simple_current_and_conjugation() {
    for n in 2..=5 {
        for k in 1..=5 {
            let ws = enumerate_weights(n, k).unwrap();
            for w in &ws {
                assert!(ws.contains(&w.simple_current()));
                assert!(ws.contains(&w.conjugate()));
            }
            // Binomial(n - 1 + k, k).
            let mut count = 1u64;
            for i in 0..k as u64 {
                count = count * (n as u64 + i) / (i + 1);
            }
            assert_eq!(ws.len() as u64, count, "SU({n})_{k}");
        }
    }
}

#[test]
fn simple_current_orbit_of_vacuum_has_closed_form_weights() {
    for n in 2..=8usize {
        for k in 1..=4u32 {
            let vac = AffineWeight::vacuum(n, k).unwrap();
            for a in 0..n as i64 {
                let expected = Q::new(a * (n as i64 - a) * k as i64, 2 * n as i64);
                assert_eq!(conformal_weight(&vac.simple_current_pow(a)), expected, "SU({n})_{k}, a = {a}");
            }
        }
    }
}

#[test]
fn fusion_is_symmetric_and_multiplies_dimensions() {
    for (n, k) in [(2, 3), (2, 4), (3, 2), (3, 3), (4, 2)] {
        let d = ModularDatum::wzw(n, k).unwrap();
        for a in 0..d.len() {
            for b in 0..d.len() {
                let ab = d.fuse(a, b).unwrap();
                assert_eq!(ab, d.fuse(b, a).unwrap());
                let lhs = d.dim(a) * d.dim(b);
                assert!((ab.dimension(&d) - lhs).abs() < 1e-9 * lhs.max(1.0));
                // N_ab^0 = delta(b, a-bar).
                assert_eq!(ab.get(0), u32::from(b == d.dual(a)));
            }
        }
    }
}

#[test]
fn fusion_is_associative_on_su3_level_2() {
    let d = ModularDatum::wzw(3, 2).unwrap();
    for a in 0..d.len() {
        for b in 0..d.len() {
            for c in 0..d.len() {
                let mut left = holonet_core::SectorVector::new();
                for (x, m) in d.fuse(a, b).unwrap().iter() {
                    for (y, mm) in d.fuse(x, c).unwrap().iter() {
                        left.add(y, m * mm);
                    }
                }
                let mut right = holonet_core::SectorVector::new();
                for (x, m) in d.fuse(b, c).unwrap().iter() {
                    for (y, mm) in d.fuse(a, x).unwrap().iter() {
                        right.add(y, m * mm);
                    }
                }
                assert_eq!(left, right);
            }
        }
    }
}
