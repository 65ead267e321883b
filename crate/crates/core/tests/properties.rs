use proptest::prelude::*;

use symbvd::characteristics::{CharacteristicQuad, EigenOrdering, FrameInput, InterfaceFrame};
use symbvd::dump::{DumpHeader, FieldDump};
use symbvd::hllc::hllc_flux;
use symbvd::reconstruction::{
    bvd_select, p4_boundary_values, sf_si_check, MirrorCheck, Stencil5, Thinc, BETA_LARGE, BETA_SMALL, WINDOW,
};
use symbvd::state::{
    conserved_from_primitive, physical_flux, primitive_from_conserved, Axis, ConservedState, GasModel, PrimitiveState,
    Variant,
};

fn value() -> impl Strategy<Value = f64> {
    prop_oneof![-1.0e3f64..1.0e3, -1.0f64..1.0, Just(0.0), Just(1.0), Just(-1.0)]
}

fn prim() -> impl Strategy<Value = PrimitiveState<f64>> {
    (0.05f64..5.0, -3.0f64..3.0, -3.0f64..3.0, 0.05f64..5.0).prop_map(|(r, u, v, p)| PrimitiveState::new(r, u, v, p))
}

fn cons(q: &PrimitiveState<f64>) -> ConservedState<f64> {
    conserved_from_primitive(q, &GasModel::air()).unwrap()
}

fn p4(v: Variant) -> impl Fn(&[f64]) -> (f64, f64) {
    move |s| p4_boundary_values(&Stencil5([s[0], s[1], s[2], s[3], s[4]]), v)
}

fn thinc(beta: f64) -> impl Fn(&[f64]) -> (f64, f64) {
    let t = Thinc::new(beta);
    move |s| t.eval(s[0], s[1], s[2], Variant::Symmetric)
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(2000))]

    #[test]
    fn symmetric_p4_is_flip_and_sign_exact(s in prop::array::uniform5(value())) {
        for mode in [MirrorCheck::StencilFlip, MirrorCheck::SignInversion] {
            prop_assert!(sf_si_check(p4(Variant::Symmetric), &s, mode));
        }
    }

    #[test]
    fn symmetric_thinc_is_flip_and_sign_exact(s in prop::array::uniform3(value())) {
        for beta in [BETA_SMALL, BETA_LARGE] {
            for mode in [MirrorCheck::StencilFlip, MirrorCheck::SignInversion] {
                prop_assert!(sf_si_check(thinc(beta), &s, mode));
            }
        }
    }

    #[test]
    fn thinc_stays_within_neighbours(s in prop::array::uniform3(-10.0f64..10.0)) {
        let (plus, minus) = thinc(BETA_LARGE)(&s);
        let lo = s[0].min(s[2]).min(s[1]);
        let hi = s[0].max(s[2]).max(s[1]);
        prop_assert!(plus >= lo - 1e-12 && plus <= hi + 1e-12);
        prop_assert!(minus >= lo - 1e-12 && minus <= hi + 1e-12);
    }

    #[test]
    fn symmetric_selection_commutes_with_reversal_and_negation(w in prop::collection::vec(value(), WINDOW)) {
        let o = bvd_select(&w, Variant::Symmetric).unwrap();
        let rev: Vec<f64> = w.iter().rev().copied().collect();
        let r = bvd_select(&rev, Variant::Symmetric).unwrap();
        prop_assert_eq!((r.left, r.right), (o.right, o.left));
        prop_assert_eq!(r.labels, [o.labels[1], o.labels[0]]);
        let neg: Vec<f64> = w.iter().map(|x| -x).collect();
        let n = bvd_select(&neg, Variant::Symmetric).unwrap();
        prop_assert_eq!((n.left, n.right), (-o.left, -o.right));
        prop_assert_eq!(n.labels, o.labels);
    }

    #[test]
    fn eos_round_trip(q in prim()) {
        let gas = GasModel::air();
        let back = primitive_from_conserved(&cons(&q), &gas).unwrap();
        for (a, b) in [(back.rho, q.rho), (back.u, q.u), (back.v, q.v), (back.p, q.p)] {
            prop_assert!((a - b).abs() <= 1e-11 * (1.0 + b.abs()), "{} vs {}", a, b);
        }
    }

    #[test]
    fn eigenvectors_are_mutually_inverse(ql in prim(), qr in prim(), x in any::<bool>(), sym in any::<bool>()) {
        let gas = GasModel::air();
        let axis = if x { Axis::X } else { Axis::Y };
        let ordering = if sym { EigenOrdering::SymmetryPreserving } else { EigenOrdering::Natural };
        let (ul, ur) = (cons(&ql), cons(&qr));
        let f = InterfaceFrame::build(
            &FrameInput::from_conserved(&ul, &gas).unwrap(),
            &FrameInput::from_conserved(&ur, &gas).unwrap(),
            axis,
            ordering,
            &gas,
        )
        .unwrap();
        prop_assert!(f.inverse_defect() <= 1e-13, "defect {}", f.inverse_defect());
        let back = f.to_conservative(&CharacteristicQuad { w: f.to_characteristic(&ul).w });
        for (a, b) in back.to_array().iter().zip(ul.to_array()) {
            prop_assert!((a - b).abs() <= 1e-12 * (1.0 + b.abs()));
        }
    }

    #[test]
    fn symmetric_hllc_mirror_flux_is_exact(ql in prim(), qr in prim()) {
        let gas = GasModel::air();
        let (ul, ur) = (cons(&ql), cons(&qr));
        let f = hllc_flux(&ul, &ur, Axis::X, &gas, Variant::Symmetric).unwrap();
        let m = hllc_flux(&ur.mirror_x_momentum(), &ul.mirror_x_momentum(), Axis::X, &gas, Variant::Symmetric).unwrap();
        prop_assert_eq!(m.to_array().map(f64::to_bits), [(-f.rho).to_bits(), f.mx.to_bits(), (-f.my).to_bits(), (-f.energy).to_bits()]);

        let fy = hllc_flux(&ul, &ur, Axis::Y, &gas, Variant::Symmetric).unwrap();
        let d = hllc_flux(&ul.swap_momenta(), &ur.swap_momenta(), Axis::X, &gas, Variant::Symmetric).unwrap();
        prop_assert_eq!(d.to_array().map(f64::to_bits), fy.swap_momenta().to_array().map(f64::to_bits));
    }

    #[test]
    fn hllc_is_consistent(q in prim(), x in any::<bool>(), sym in any::<bool>()) {
        let gas = GasModel::air();
        let axis = if x { Axis::X } else { Axis::Y };
        let variant = if sym { Variant::Symmetric } else { Variant::Original };
        let u = cons(&q);
        let f = hllc_flux(&u, &u, axis, &gas, variant).unwrap();
        let exact = physical_flux(&q, &u, axis);
        for (a, b) in f.to_array().iter().zip(exact.to_array()) {
            prop_assert!((a - b).abs() <= 1e-13 * (1.0 + b.abs()), "{} vs {}", a, b);
        }
    }

    #[test]
    fn field_dump_round_trip_is_bit_identical(
        nx in 1usize..6,
        ny in 1usize..6,
        raw in prop::collection::vec(any::<u64>(), 4 * 25),
        time in any::<f64>(),
    ) {
        let n = nx * ny;
        let fields = [0, 1, 2, 3].map(|c| raw[c * n..(c + 1) * n].iter().map(|&b| f64::from_bits(b)).collect::<Vec<_>>());
        let d = FieldDump { header: DumpHeader { nx, ny, time, dx: 0.5, dy: 0.25 }, fields };
        let bytes = d.to_bytes().unwrap();
        prop_assert_eq!(bytes.len(), 36 + 32 * n);
        prop_assert_eq!(FieldDump::from_bytes(&bytes).unwrap().to_bytes().unwrap(), bytes);
    }
}

#[test]
fn kernels_are_generic_over_f32() {
    let s = Stencil5([0.1f32, -2.5, 3.25, 7.0, -0.5]);
    let (p, m) = p4_boundary_values(&s, Variant::Symmetric);
    let (fp, fm) = p4_boundary_values(&Stencil5([-0.5f32, 7.0, 3.25, -2.5, 0.1]), Variant::Symmetric);
    assert_eq!((p, m), (fm, fp));

    let gas = GasModel::<f32>::air();
    let u = conserved_from_primitive(&PrimitiveState::new(1.0f32, 0.5, -0.25, 1.0), &gas).unwrap();
    let f = hllc_flux(&u, &u, Axis::X, &gas, Variant::Symmetric).unwrap();
    assert!((f.rho - 0.5).abs() < 1e-6);
}
