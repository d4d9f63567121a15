//! Randomized property checks for the arithmetic and reduction
//! engines.

use num::BigInt;
use pathalg::abelian;
use pathalg::algebra::AlgebraElement;
use pathalg::quiver::samples;
use pathalg::scalar::FieldSpec;
use pathalg::weak::{self, BasisGen, FilteredFreeModule, ModuleVector};
use proptest::prelude::*;

fn qf() -> FieldSpec {
    FieldSpec::Q
}

/// Element of the two-petal rose algebra from a coefficient list over
/// the paths of length at most two.
fn element(coeffs: &[i64]) -> AlgebraElement {
    let q = samples::rose(2);
    let paths = q.paths_up_to(2);
    assert!(coeffs.len() <= paths.len());
    AlgebraElement::from_terms(
        qf(),
        paths.into_iter().zip(coeffs).map(|(p, &c)| (p, qf().from_i64(c))),
    )
}

fn coeffs() -> impl Strategy<Value = Vec<i64>> {
    proptest::collection::vec(-3i64..=3, 7)
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(64))]

    #[test]
    fn multiplication_is_associative(a in coeffs(), b in coeffs(), c in coeffs()) {
        let q = samples::rose(2);
        let (a, b, c) = (element(&a), element(&b), element(&c));
        let left = a.mul(&b, &q).unwrap().mul(&c, &q).unwrap();
        let right = a.mul(&b.mul(&c, &q).unwrap(), &q).unwrap();
        prop_assert_eq!(left, right);
    }

    #[test]
    fn multiplication_distributes(a in coeffs(), b in coeffs(), c in coeffs()) {
        let q = samples::rose(2);
        let (a, b, c) = (element(&a), element(&b), element(&c));
        let left = a.mul(&b.add(&c).unwrap(), &q).unwrap();
        let right = a.mul(&b, &q).unwrap().add(&a.mul(&c, &q).unwrap()).unwrap();
        prop_assert_eq!(left, right);
    }

    #[test]
    fn augmentation_is_multiplicative(a in coeffs(), b in coeffs()) {
        let q = samples::rose(2);
        let (a, b) = (element(&a), element(&b));
        let ea = a.augmentation(&q)[0].clone();
        let eb = b.augmentation(&q)[0].clone();
        let eab = a.mul(&b, &q).unwrap().augmentation(&q)[0].clone();
        prop_assert_eq!(eab, ea.mul(&eb));
    }

    #[test]
    fn degree_is_submultiplicative(a in coeffs(), b in coeffs()) {
        let q = samples::rose(2);
        let (a, b) = (element(&a), element(&b));
        let ab = a.mul(&b, &q).unwrap();
        if let (Some(na), Some(nb), Some(nab)) = (a.nu(), b.nu(), ab.nu()) {
            prop_assert!(nab <= na + nb);
        }
    }

    #[test]
    fn normal_form_is_idempotent_and_sound(
        g1 in coeffs(), g2 in coeffs(), m in coeffs()
    ) {
        let q = samples::rose(2);
        let module = FilteredFreeModule::new(
            qf(),
            &q,
            vec![BasisGen { label: "b".into(), vertex: 0, mu: 0 }],
        ).unwrap();
        let vec_of = |c: &[i64]| ModuleVector::from_coords(qf(), vec![(0, element(c))]);
        let gens = vec![vec_of(&g1), vec_of(&g2)];
        let basis = weak::weak_basis(&gens, &module, &q).unwrap();
        let v = vec_of(&m);
        let nf = weak::normal_form(&v, &basis, &module, &q).unwrap();
        prop_assert_eq!(&weak::normal_form(&nf, &basis, &module, &q).unwrap(), &nf);
        // the discarded part is a member
        let diff = v.sub(&nf).unwrap();
        prop_assert!(weak::is_member(&diff, &basis, &module, &q).unwrap());
        // generators always reduce to zero against their own basis
        for g in &gens {
            prop_assert!(weak::is_member(g, &basis, &module, &q).unwrap());
        }
    }

    #[test]
    fn smith_form_is_a_factorization(
        entries in proptest::collection::vec(-5i64..=5, 9)
    ) {
        let m: Vec<Vec<i64>> = entries.chunks(3).map(|r| r.to_vec()).collect();
        let mi = abelian::to_bigint(&m);
        let (u, d, v) = abelian::smith_normal_form(&mi);
        let mul = |a: &Vec<Vec<BigInt>>, b: &Vec<Vec<BigInt>>| -> Vec<Vec<BigInt>> {
            let n = a.len();
            let k = b[0].len();
            (0..n).map(|i| (0..k).map(|j| {
                (0..b.len()).map(|t| &a[i][t] * &b[t][j]).sum()
            }).collect()).collect()
        };
        prop_assert_eq!(mul(&mul(&u, &mi), &v), d.clone());
        // diagonal with divisibility chain
        for i in 0..3 {
            for j in 0..3 {
                if i != j {
                    prop_assert_eq!(&d[i][j], &BigInt::from(0));
                }
            }
        }
        for i in 0..2 {
            if d[i + 1][i + 1] != BigInt::from(0) || d[i][i] == BigInt::from(0) {
                prop_assert!(d[i][i] == BigInt::from(0) || (&d[i + 1][i + 1] % &d[i][i]) == BigInt::from(0));
            }
        }
    }

    #[test]
    fn scalar_wire_round_trip(n in -1000i64..1000, d in 1i64..50) {
        for field in [FieldSpec::Q, FieldSpec::fp(7).unwrap()] {
            let x = field.from_i64(n).div(&field.from_i64(d));
            if let Ok(x) = x {
                let back = field.parse(&x.to_wire()).unwrap();
                prop_assert_eq!(back, x);
            }
        }
    }
}
