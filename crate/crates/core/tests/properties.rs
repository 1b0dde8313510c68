use modsurf::dynamics::{canonicalize, min_rotation, word_matrix, Letter, Word};
use modsurf::lengths::{geodesic_length, length_spectrum};
use modsurf::psl2::{ExtendedReal, GroupElement};
use modsurf::transfer::{hurwitz_zeta, tau_action};
use num_complex::Complex64;
use proptest::prelude::*;

fn element() -> impl Strategy<Value = GroupElement> {
    // products of short words in S, T, T^-1 stay well inside i128
    prop::collection::vec(0u8..3, 0..12).prop_map(|w| {
        w.into_iter().fold(GroupElement::identity(), |g, l| {
            let x = match l {
                0 => GroupElement::s(),
                1 => GroupElement::t(),
                _ => GroupElement::t().inverse(),
            };
            g.compose(&x).unwrap()
        })
    })
}

fn word() -> impl Strategy<Value = Word> {
    prop::collection::vec(prop::bool::ANY, 2..14)
        .prop_map(|bits| {
            let mut letters: Vec<Letter> = bits
                .iter()
                .map(|&b| if b { Letter::L1 } else { Letter::L2 })
                .collect();
            letters[0] = Letter::L1;
            letters[1] = Letter::L2;
            letters
        })
        .prop_map(|l| Word::new(l).unwrap())
}

proptest! {
    #[test]
    fn group_axioms(g in element(), h in element(), k in element()) {
        let e = GroupElement::identity();
        prop_assert_eq!(g.compose(&e).unwrap(), g);
        prop_assert_eq!(e.compose(&g).unwrap(), g);
        prop_assert!(g.compose(&g.inverse()).unwrap().is_identity());
        let left = g.compose(&h).unwrap().compose(&k).unwrap();
        let right = g.compose(&h.compose(&k).unwrap()).unwrap();
        prop_assert_eq!(left, right);
        prop_assert_eq!(g.compose(&h).unwrap().inverse(), h.inverse().compose(&g.inverse()).unwrap());
    }

    #[test]
    fn trace_is_a_class_function(g in element(), h in element()) {
        prop_assert_eq!(g.conjugate_by(&h).unwrap().trace(), g.trace());
    }

    #[test]
    fn mobius_is_a_homomorphism(g in element(), h in element(), x in -50.0f64..50.0) {
        let gh = g.compose(&h).unwrap();
        let direct = gh.mobius(ExtendedReal::Finite(x));
        let nested = g.mobius(h.mobius(ExtendedReal::Finite(x)));
        prop_assert!(direct.chordal_distance(nested) < 1e-9, "{direct:?} vs {nested:?}");
    }

    #[test]
    fn tau_is_a_representation(g in element(), h in element(), t in 0.05f64..7.0, r in 0.0f64..15.0) {
        let s = Complex64::new(0.5, r);
        let f = |x: f64| Complex64::new(1.0 / (1.0 + x * x), x.sin());
        let gh = g.compose(&h).unwrap();
        let lhs = tau_action(&gh, s, f, t);
        let rhs = tau_action(&g, s, |y| tau_action(&h, s, f, y).unwrap_or(Complex64::new(f64::NAN, 0.0)), t);
        if let (Ok(a), Ok(b)) = (lhs, rhs) {
            if a.is_finite() && b.is_finite() {
                prop_assert!((a - b).norm() <= 1e-7 * (1.0 + a.norm()), "{a} vs {b}");
            }
        }
    }

    #[test]
    fn canonicalize_is_idempotent_and_rotation_invariant(w in word(), k in 0usize..20) {
        if let Ok(n) = canonicalize(&w) {
            prop_assert_eq!(canonicalize(n.word()).unwrap(), n.clone());
            prop_assert_eq!(canonicalize(&w.rotate(k)).unwrap(), n.clone());
            prop_assert_eq!(min_rotation(n.word()), n.word().clone());
            prop_assert_eq!(n.matrix().trace(), word_matrix(&w).unwrap().trace());
        }
    }

    #[test]
    fn hurwitz_shift_relation(re in 1.2f64..6.0, im in -20.0f64..20.0, a in 0.1f64..30.0) {
        let w = Complex64::new(re, im);
        let z0 = hurwitz_zeta(w, a).unwrap();
        let z1 = hurwitz_zeta(w, a + 1.0).unwrap();
        let term = (-w * a.ln()).exp();
        prop_assert!((z0 - z1 - term).norm() <= 1e-11 * (1.0 + z0.norm()));
    }
}

#[test]
fn lengths_increase_with_trace() {
    let spectrum = length_spectrum(200).unwrap();
    for pair in spectrum.windows(2) {
        assert!(pair[0].trace < pair[1].trace && pair[0].length < pair[1].length);
        let t = pair[1].trace as f64;
        assert!(((pair[1].length / 2.0).cosh() * 2.0 - t).abs() < 1e-10 * t);
    }
    assert!((spectrum[0].length - geodesic_length(3).unwrap()).abs() == 0.0);
}
