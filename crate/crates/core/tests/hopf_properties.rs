use oresmooth::hopf::{Bialgebra, HopfFamily, Tensor};
use oresmooth::sample::Sampler;
use oresmooth::{OreElement, Scalar};

fn q(t: &str) -> Scalar {
    t.parse().unwrap()
}

fn families() -> Vec<HopfFamily> {
    let mut fams = vec![HopfFamily::EnvelopingSolvable];
    for n in 1..=3 {
        for qv in ["2", "-1/3"] {
            fams.push(HopfFamily::quantum_torus(q(qv), n).unwrap());
        }
        fams.push(HopfFamily::laurent_derivation(n).unwrap());
    }
    fams
}

fn primitive_y(h: &Bialgebra) -> Tensor {
    let (y, one) = (h.algebra.y(), h.algebra.one());
    Tensor::pure(&[y.clone(), one.clone()])
        .unwrap()
        .try_add(&Tensor::pure(&[one, y]).unwrap())
        .unwrap()
}

fn element(s: &mut Sampler, h: &Bialgebra) -> OreElement {
    s.ore_element(&h.algebra, 2, 3)
}

#[test]
fn coproduct_is_multiplicative_on_random_products() {
    let mut s = Sampler::from_env(31);
    for fam in families() {
        let h = Bialgebra::new(fam);
        for _ in 0..12 {
            let (a, b) = (element(&mut s, &h), element(&mut s, &h));
            let lhs = h.coproduct(&a.try_mul(&b).unwrap()).unwrap();
            let rhs = h
                .coproduct(&a)
                .unwrap()
                .try_mul(&h.coproduct(&b).unwrap())
                .unwrap();
            assert_eq!(lhs, rhs, "{}: a = {a}, b = {b}", h.family);
        }
    }
}

#[test]
fn counit_and_coassociativity_on_random_elements() {
    let mut s = Sampler::from_env(32);
    for fam in families() {
        let h = Bialgebra::new(fam);
        for _ in 0..8 {
            let a = element(&mut s, &h);
            let d = h.coproduct(&a).unwrap();
            let counit = |m: &OreElement| Ok(Tensor::one(&h.algebra, 0).scalar_mul(&h.counit(m)?));
            assert_eq!(d.map_factor(0, counit).unwrap().to_element().unwrap(), a);
            assert_eq!(d.map_factor(1, counit).unwrap().to_element().unwrap(), a);
            let left = d.map_factor(0, |m| h.coproduct(m)).unwrap();
            let right = d.map_factor(1, |m| h.coproduct(m)).unwrap();
            assert_eq!(left, right, "{}: a = {a}", h.family);
        }
    }
}

#[test]
fn primitive_y_is_compatible_with_quantum_torus_relation() {
    // yx = qxy is homogeneous, so y⊗1 + 1⊗y with x grouplike respects it as well.
    for n in 1..=3 {
        let mut h = Bialgebra::new(HopfFamily::quantum_torus(q("3"), n).unwrap());
        h.delta_y = primitive_y(&h);
        let r = h.verify_coproduct_respects_relation().unwrap();
        assert!(r.pass, "{r}");
    }
}

#[test]
fn genuine_twist_failures() {
    let mut b = Bialgebra::new(HopfFamily::quantum_torus(q("2"), 2).unwrap());
    let y = b.algebra.y();
    b.delta_y = Tensor::pure(&[y.clone(), y]).unwrap();
    assert!(!b.verify_coproduct_respects_relation().unwrap().pass);

    for n in 2..=4 {
        let mut c = Bialgebra::new(HopfFamily::laurent_derivation(n).unwrap());
        c.delta_y = primitive_y(&c);
        assert!(!c.verify_coproduct_respects_relation().unwrap().pass, "n = {n}");
    }
    // At n = 1 the primitive coproduct is the family's own.
    let c = Bialgebra::new(HopfFamily::laurent_derivation(1).unwrap());
    assert_eq!(c.delta_y, primitive_y(&c));
}
