use vcalc_core::coef::{rat, CoefPoly};
use vcalc_core::ring::{fundamental_jz, normal_basis, parse_class, RingClass, RingError};

#[test]
fn parse_normalize_integrate() {
    let x = parse_class("(alpha + H)^3 * Theta^2").unwrap();
    assert!(x.terms().all(|(m, _)| m.is_normal()));
    // alpha^3 Theta^2 and alpha^2 H Theta^2 carry no alpha^3*H*Theta^2 term
    assert!(x.is_homogeneous_of(10));
    let y = &x * &parse_class("H").unwrap();
    assert_eq!(
        y.integrate_top_jz().unwrap(),
        CoefPoly::from_int(8).scale(&y.coeff(&fundamental_jz()).as_constant().unwrap())
    );
}

#[test]
fn integration_errors() {
    assert!(parse_class("alpha^3*H*Theta^2*f")
        .unwrap()
        .integrate_fiber_x1()
        .is_ok());
    assert!(matches!(
        parse_class("alpha^2*H*Theta^2*f")
            .unwrap()
            .integrate_top_jz(),
        Err(RingError::ContainsFiberClass(_))
    ));
}

#[test]
fn json_round_trip_over_basis() {
    let x = RingClass::from_raw(
        normal_basis()
            .iter()
            .enumerate()
            .map(|(i, m)| (*m, CoefPoly::constant(rat(i as i64 + 1, 7)))),
    );
    let js = serde_json::to_string(&x).unwrap();
    assert_eq!(serde_json::from_str::<RingClass>(&js).unwrap(), x);
    assert_eq!(parse_class(&x.to_string()).unwrap(), x);
}
