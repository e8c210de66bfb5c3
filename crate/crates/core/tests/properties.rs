use hesse_core::classify::{classify, normal_form_cubic, CubicType};
use hesse_core::finitegeo::{AffMap3, Pt};
use hesse_core::hessgroup::hes_table;
use hesse_core::poly::{act, deserialize_cubic, hessian, serialize_cubic, Mat3, TernaryCubic};
use hesse_core::projective::{collinear, transform_from_frames, PPoint};
use hesse_core::scalar::{Eis, Rat, Scalar, CF};
use proptest::prelude::*;

fn rat() -> impl Strategy<Value = Rat> {
    (-30i64..=30, 1i64..=7).prop_map(|(n, d)| Rat::new(n, d))
}

fn eis() -> impl Strategy<Value = Eis> {
    (rat(), rat()).prop_map(|(a, b)| Eis::new(a, b))
}

fn small_eis() -> impl Strategy<Value = Eis> {
    (-3i64..=3, -3i64..=3).prop_map(|(a, b)| Eis::from_ints(a, b))
}

fn int_cubic() -> impl Strategy<Value = TernaryCubic<Eis>> {
    proptest::array::uniform10(-4i64..=4)
        .prop_filter("nonzero", |c| c.iter().any(|&x| x != 0))
        .prop_map(|c| TernaryCubic::new(c.map(Eis::from)))
}

fn eis_cubic() -> impl Strategy<Value = TernaryCubic<Eis>> {
    proptest::array::uniform10(small_eis()).prop_filter("nonzero", |c| c.iter().any(|x| !x.is_zero())).prop_map(TernaryCubic::new)
}

fn matrix() -> impl Strategy<Value = Mat3<Eis>> {
    proptest::array::uniform9(small_eis())
        .prop_map(|e| Mat3::from_fn(|i, j| e[3 * i + j].clone()))
        .prop_filter("invertible", |m| !m.det().is_zero())
}

/// Products of transvections, so the determinant is one.
fn unimodular() -> impl Strategy<Value = Mat3<Eis>> {
    proptest::collection::vec((0usize..3, 1usize..3, -2i64..=2), 1..5).prop_map(|steps| {
        steps.into_iter().fold(Mat3::identity(), |m, (i, o, c)| {
            let j = (i + o) % 3;
            m.mul(&Mat3::from_fn(|r, s| Eis::from(i64::from(r == s) + if (r, s) == (i, j) { c } else { 0 })))
        })
    })
}

fn point() -> impl Strategy<Value = PPoint<Eis>> {
    proptest::array::uniform3(small_eis()).prop_filter_map("nonzero", |c| PPoint::new(c).ok())
}

fn frame() -> impl Strategy<Value = [PPoint<Eis>; 4]> {
    proptest::array::uniform4(point()).prop_filter("general position", |f| {
        (0..4).all(|skip| {
            let rest: Vec<&PPoint<Eis>> = f.iter().enumerate().filter(|(k, _)| *k != skip).map(|(_, p)| p).collect();
            !collinear(rest[0], rest[1], rest[2])
        })
    })
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(64))]

    #[test]
    fn field_axioms(a in eis(), b in eis(), c in eis()) {
        prop_assert_eq!((a.clone() + b.clone()) + c.clone(), a.clone() + (b.clone() + c.clone()));
        prop_assert_eq!((a.clone() * b.clone()) * c.clone(), a.clone() * (b.clone() * c.clone()));
        prop_assert_eq!(a.clone() * (b.clone() + c.clone()), a.clone() * b.clone() + a.clone() * c.clone());
        prop_assert_eq!(a.clone() * b.clone(), b.clone() * a.clone());
        prop_assert_eq!(a.clone() - a.clone(), Eis::from(0));
        if let Some(inv) = a.inv() {
            prop_assert_eq!(a.clone() * inv, Eis::from(1));
        } else {
            prop_assert!(a.is_zero());
        }
    }

    #[test]
    fn conjugation_is_a_homomorphism(a in eis(), b in eis()) {
        prop_assert_eq!((a.clone() * b.clone()).conj(), a.conj() * b.conj());
        prop_assert_eq!((a.clone() + b.clone()).conj(), a.conj() + b.conj());
        prop_assert_eq!(a.conj().conj(), a.clone());
        prop_assert_eq!(Eis::rational(a.norm()), a.clone() * a.conj());
        prop_assert_eq!((a.clone() * b.clone()).norm(), a.norm() * b.norm());
    }

    #[test]
    fn scalar_text_round_trip(a in eis()) {
        prop_assert_eq!(a.to_string().parse::<Eis>().unwrap(), a);
    }

    #[test]
    fn act_is_a_left_action(g in matrix(), h in matrix(), f in int_cubic()) {
        let lhs = act(&g, &act(&h, &f).unwrap()).unwrap();
        let rhs = act(&g.mul(&h), &f).unwrap();
        prop_assert_eq!(lhs, rhs);
    }

    #[test]
    fn hessian_is_covariant(g in unimodular(), f in eis_cubic()) {
        prop_assert_eq!(act(&g, &hessian(&f)).unwrap(), hessian(&act(&g, &f).unwrap()));
    }

    #[test]
    fn serialization_round_trip(f in eis_cubic()) {
        prop_assert_eq!(deserialize_cubic(&serialize_cubic(&f)).unwrap(), f);
    }

    #[test]
    fn canonicalization_is_idempotent(p in point(), c in small_eis()) {
        prop_assume!(!c.is_zero());
        let again = PPoint::new(p.coords().clone()).unwrap();
        prop_assert_eq!(&again, &p);
        let scaled = PPoint::new(p.coords().clone().map(|x| x * c.clone())).unwrap();
        prop_assert_eq!(scaled, p);
    }

    #[test]
    fn frames_map_to_frames(src in frame(), dst in frame()) {
        let t = transform_from_frames(&src, &dst).unwrap();
        for (s, d) in src.iter().zip(&dst) {
            prop_assert_eq!(&t.apply(s), d);
        }
        let back = transform_from_frames(&dst, &src).unwrap();
        prop_assert_eq!(back.compose(&t), hesse_core::projective::PTransform::identity());
    }

    #[test]
    fn numeric_points_match_exact_ones(p in point()) {
        let z = p.to_cf();
        let rotated = PPoint::new(z.coords().map(|x| x * CF::from_polar(2.0, 0.7))).unwrap();
        prop_assert!(z.distance(&rotated) < 1e-12);
    }

    #[test]
    fn theta_is_a_homomorphism(a in 0usize..216, b in 0usize..216) {
        let t = hes_table();
        let ab = t.compose(a, b);
        prop_assert_eq!(t.elements[ab].theta_image, t.elements[a].theta_image.compose(&t.elements[b].theta_image));
    }

    #[test]
    fn affine_maps_parse(m in proptest::array::uniform4(0i64..3), v in proptest::array::uniform2(0i64..3)) {
        if let Ok(a) = AffMap3::from_ints([[m[0], m[1]], [m[2], m[3]]], v) {
            prop_assert_eq!(a.to_string().parse::<AffMap3>().unwrap(), a);
            let p = Pt::new(m[0], v[1]);
            prop_assert_eq!(a.inverse().apply(a.apply(p)), p);
        }
    }
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(16))]

    #[test]
    fn classification_is_invariant(k in 0usize..9, mu in small_eis(), g in matrix()) {
        prop_assume!(!mu.is_zero());
        let t = CubicType::ALL[k];
        let f = normal_form_cubic(t, &mu).unwrap_or_else(|| hesse_core::hesse::pencil_member(&hesse_core::hesse::PencilParam::Finite(Eis::from(1))));
        prop_assert_eq!(classify(&act(&g, &f).unwrap()).unwrap(), t);
    }
}
