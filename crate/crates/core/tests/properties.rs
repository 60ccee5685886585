//! Randomized algebraic properties, 1024 cases each.

mod props;

#[test]
fn field_laws() {
    props::field_laws().unwrap();
}

#[test]
fn polynomial_round_trips() {
    props::polynomial_round_trips().unwrap();
}

#[test]
fn coset_closure() {
    props::coset_closure().unwrap();
}

#[test]
fn shift_closure() {
    props::shift_closure().unwrap();
}

#[test]
fn certificate_determinism() {
    props::certificate_determinism().unwrap();
}

#[test]
fn registry_lists_every_property() {
    assert_eq!(props::all().len(), 5);
}
