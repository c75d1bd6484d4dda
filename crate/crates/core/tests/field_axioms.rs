//! Exhaustive field-law checks over every default field of order at most 32.

use mpcodes::{Elem, Field};

const ORDERS: [u32; 13] = [2, 3, 4, 5, 7, 8, 9, 11, 13, 16, 25, 27, 32];

fn fields() -> impl Iterator<Item = Field> {
    ORDERS.iter().map(|&q| Field::of_order(q).unwrap())
}

#[test]
fn ring_laws_hold_for_all_triples() {
    for f in fields() {
        let els: Vec<Elem> = f.elements().collect();
        for &a in &els {
            assert_eq!(f.add(a, Elem::ZERO), a);
            assert_eq!(f.mul(a, Elem::ONE), a);
            assert_eq!(f.add(a, f.neg(a)), Elem::ZERO);
            for &b in &els {
                assert_eq!(f.add(a, b), f.add(b, a));
                assert_eq!(f.mul(a, b), f.mul(b, a));
                assert_eq!(
                    f.mul(a, b),
                    f.mul_reference(a, b),
                    "q={} {a:?} {b:?}",
                    f.order()
                );
                for &c in &els {
                    assert_eq!(f.add(f.add(a, b), c), f.add(a, f.add(b, c)));
                    assert_eq!(f.mul(f.mul(a, b), c), f.mul(a, f.mul(b, c)));
                    assert_eq!(f.mul(a, f.add(b, c)), f.add(f.mul(a, b), f.mul(a, c)));
                }
            }
        }
    }
}

#[test]
fn every_nonzero_element_has_an_inverse() {
    for f in fields() {
        assert!(f.inv(Elem::ZERO).is_err());
        for a in f.elements().skip(1) {
            assert_eq!(f.mul(a, f.inv(a).unwrap()), Elem::ONE);
        }
    }
}

#[test]
fn frobenius_is_a_field_automorphism() {
    for f in fields() {
        let e = f.degree();
        for ell in 0..e {
            let mut image: Vec<Elem> = f.elements().map(|a| f.frobenius(a, ell)).collect();
            image.sort_by_key(|x| x.enc());
            image.dedup();
            assert_eq!(image.len(), f.order() as usize, "σ^{ell} is a bijection");
            for a in f.elements() {
                for b in f.elements() {
                    let s = |x| f.frobenius(x, ell);
                    assert_eq!(s(f.add(a, b)), f.add(s(a), s(b)));
                    assert_eq!(s(f.mul(a, b)), f.mul(s(a), s(b)));
                }
            }
        }
    }
}

#[test]
fn frobenius_powers_compose_modulo_degree() {
    for f in fields() {
        let e = f.degree();
        for a in f.elements() {
            assert_eq!(f.frobenius(a, 0), a);
            assert_eq!(f.frobenius(a, 1), f.pow(a, f.characteristic() as u64));
            for l in 0..e {
                for m in 0..e {
                    assert_eq!(
                        f.frobenius(f.frobenius(a, m), l),
                        f.frobenius(a, (l + m) % e)
                    );
                }
            }
        }
    }
}

#[test]
fn element_tokens_round_trip() {
    for f in fields() {
        for a in f.elements() {
            assert_eq!(f.parse_elem(&f.format_elem(a)).unwrap(), a);
        }
    }
}
