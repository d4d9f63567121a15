//! K-group assembly for the three algebras attached to a quiver: the
//! Leavitt algebra, the universal localization of the path algebra,
//! and the regular closure. Degree 0 and 1 only; higher degrees are
//! rejected.

use crate::abelian::{self, FGAbelianGroup, UnitCoker};
use crate::quiver::Quiver;
use crate::rep::{self, Rep};
use crate::scalar::FieldSpec;
use crate::{Error, Result};

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Target {
    Leavitt,
    Rational,
    Regular,
}

impl std::fmt::Display for Target {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        f.write_str(match self {
            Target::Leavitt => "leavitt",
            Target::Rational => "rational",
            Target::Regular => "regular",
        })
    }
}

/// One surviving simple module in a truncated generator list.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct BlaGenerator {
    pub fingerprint: String,
    pub endo_degree: usize,
}

/// Truncated list of generators of the extra K-theory summand: simple
/// finite-dimensional modules over the reversed algebra, minus the
/// killed classes and the projective ones sitting at sinks.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct BlaSummary {
    pub dmax: usize,
    pub generators: Vec<BlaGenerator>,
    pub truncated: bool,
}

#[derive(Debug, Clone)]
pub struct KReport {
    pub target: Target,
    pub degree: u32,
    pub integer_part: FGAbelianGroup,
    pub unit_part: Option<UnitCoker>,
    pub bla_part: Option<BlaSummary>,
}

/// Deterministic textual identity of a module: dimensions and matrix
/// entries in arrow order.
pub fn fingerprint(r: &Rep, q: &Quiver) -> String {
    let mut s = String::new();
    s.push_str("dims=[");
    s.push_str(
        &r.dims.iter().map(|d| d.to_string()).collect::<Vec<_>>().join(","),
    );
    s.push(']');
    for a in 0..q.arrow_count() {
        s.push(';');
        s.push_str(q.arrow(a).name.as_str());
        s.push_str("=[");
        let rows: Vec<String> = r.maps[a]
            .iter()
            .map(|row| {
                let cells: Vec<String> = row.iter().map(|x| x.to_wire()).collect();
                format!("[{}]", cells.join(","))
            })
            .collect();
        s.push_str(&rows.join(","));
        s.push(']');
    }
    s
}

/// The map 1 - N on vertex lattices, with sink columns removed.
fn one_minus_n(q: &Quiver) -> Vec<Vec<i64>> {
    let (n, one) = q.incidence_n();
    one.iter()
        .zip(&n)
        .map(|(oi, ni)| oi.iter().zip(ni).map(|(a, b)| a - b).collect())
        .collect()
}

/// K0 of the Leavitt algebra: cokernel of 1 - N, plus its kernel rank.
pub fn k0_leavitt(q: &Quiver) -> (FGAbelianGroup, usize) {
    abelian::coker_ker(&one_minus_n(q))
}

/// K1 of the Leavitt algebra: unit-group cokernel of 1 - N together
/// with the rank of its integer kernel.
pub fn k1_leavitt(q: &Quiver, field: FieldSpec) -> Result<(UnitCoker, usize)> {
    if let FieldSpec::Fp(p) = field {
        abelian::check_unit_prime(p)?;
    }
    let m = one_minus_n(q);
    let units = abelian::unit_coker(&m, field)?;
    let (_, ker) = abelian::coker_ker(&m);
    Ok((units, ker))
}

/// Simples over the reversed algebra up to dmax, minus killed classes
/// and sink projectives. The two exclusion rules never both fire.
fn bla_survivors(q: &Quiver, field: FieldSpec, dmax: usize) -> Result<Vec<Rep>> {
    let all = rep::enumerate_simples(q, dmax, field)?;
    let sinks = q.sinks();
    let mut out = Vec::new();
    for r in all {
        let killed = rep::is_coker_nu(&r, q).is_some();
        let sink_projective = r.total_dim() == 1
            && sinks.iter().any(|&s| r.dims[s] == 1);
        assert!(!(killed && sink_projective));
        if !killed && !sink_projective {
            out.push(r);
        }
    }
    Ok(out)
}

/// Generator list for the degree-0 extra summand; free abelian on the
/// survivors, truncated unless the quiver is acyclic.
pub fn bla0(q: &Quiver, field: FieldSpec, dmax: usize) -> Result<BlaSummary> {
    let survivors = bla_survivors(q, field, dmax)?;
    let mut generators = Vec::with_capacity(survivors.len());
    for r in &survivors {
        generators.push(BlaGenerator {
            fingerprint: fingerprint(r, q),
            endo_degree: rep::endomorphism_field_degree(r, q)?,
        });
    }
    Ok(BlaSummary { dmax, generators, truncated: !q.is_acyclic() })
}

/// Degree-1 extra summand: one unit group per survivor, of the field
/// extension cut out by its endomorphisms.
pub fn bla1(q: &Quiver, field: FieldSpec, dmax: usize) -> Result<Vec<FGAbelianGroup>> {
    let p = match field {
        FieldSpec::Fp(p) => p,
        FieldSpec::Q => return Err(Error::InfiniteFieldUnsupported),
    };
    let summary = bla0(q, field, dmax)?;
    Ok(summary
        .generators
        .iter()
        .map(|g| {
            let order = p.pow(g.endo_degree as u32) - 1;
            FGAbelianGroup::cyclic(order)
        })
        .collect())
}

/// K-theory of the localized path algebra: only degree 1 is defined
/// here, where it is d copies of the unit group plus the free part on
/// the surviving simples.
pub fn k_rational(q: &Quiver, field: FieldSpec, degree: u32, dmax: usize) -> Result<KReport> {
    if degree != 1 {
        return Err(Error::UnsupportedDegree(degree));
    }
    if let FieldSpec::Fp(p) = field {
        abelian::check_unit_prime(p)?;
    }
    let d = q.vertex_count();
    // (k^x)^d is the unit cokernel of the empty map into d coordinates
    let zero_map: Vec<Vec<i64>> = vec![Vec::new(); d];
    let units = abelian::unit_coker(&zero_map, field)?;
    let bla = bla0(q, field, dmax)?;
    Ok(KReport {
        target: Target::Rational,
        degree,
        integer_part: FGAbelianGroup::free(bla.generators.len()),
        unit_part: Some(units),
        bla_part: Some(bla),
    })
}

/// K-theory of the regular closure: degree 0 agrees with the Leavitt
/// algebra; degree 1 adds the degree-0 extra summand to Leavitt K1.
pub fn k_regular(q: &Quiver, field: FieldSpec, degree: u32, dmax: usize) -> Result<KReport> {
    match degree {
        0 => {
            let (g, _) = k0_leavitt(q);
            Ok(KReport {
                target: Target::Regular,
                degree,
                integer_part: g,
                unit_part: None,
                bla_part: None,
            })
        }
        1 => {
            let (units, ker) = k1_leavitt(q, field)?;
            let bla = bla0(q, field, dmax)?;
            let integer_part = FGAbelianGroup::free(ker)
                .direct_sum(&FGAbelianGroup::free(bla.generators.len()));
            Ok(KReport {
                target: Target::Regular,
                degree,
                integer_part,
                unit_part: Some(units),
                bla_part: Some(bla),
            })
        }
        n => Err(Error::UnsupportedDegree(n)),
    }
}

/// Leavitt K-theory packaged the same way as the other targets.
pub fn k_leavitt_report(q: &Quiver, field: FieldSpec, degree: u32) -> Result<KReport> {
    match degree {
        0 => {
            let (g, _) = k0_leavitt(q);
            Ok(KReport {
                target: Target::Leavitt,
                degree,
                integer_part: g,
                unit_part: None,
                bla_part: None,
            })
        }
        1 => {
            let (units, ker) = k1_leavitt(q, field)?;
            Ok(KReport {
                target: Target::Leavitt,
                degree,
                integer_part: FGAbelianGroup::free(ker),
                unit_part: Some(units),
                bla_part: None,
            })
        }
        n => Err(Error::UnsupportedDegree(n)),
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::quiver::{samples, Quiver};
    use rand::{Rng, SeedableRng};
    use rand_chacha::ChaCha8Rng;

    #[test]
    fn k0_examples() {
        let (g, _) = k0_leavitt(&samples::rose(2));
        assert!(g.is_trivial());

        let (g, _) = k0_leavitt(&samples::rose(3));
        assert_eq!(g, FGAbelianGroup::cyclic(2));

        let (g, ker) = k0_leavitt(&samples::loop1());
        assert_eq!(g, FGAbelianGroup::free(1));
        assert_eq!(ker, 1);
    }

    #[test]
    fn k1_examples() {
        let (u, ker) = k1_leavitt(&samples::loop1(), FieldSpec::fp(5).unwrap()).unwrap();
        assert_eq!(u, UnitCoker::Finite(FGAbelianGroup::cyclic(4)));
        assert_eq!(ker, 1);

        let (u, ker) = k1_leavitt(&samples::rose(2), FieldSpec::fp(7).unwrap()).unwrap();
        assert_eq!(u, UnitCoker::Finite(FGAbelianGroup::trivial()));
        assert_eq!(ker, 0);

        let (u, ker) = k1_leavitt(&samples::toeplitz(), FieldSpec::fp(3).unwrap()).unwrap();
        assert_eq!(u, UnitCoker::Finite(FGAbelianGroup::cyclic(2)));
        assert_eq!(ker, 0);
    }

    #[test]
    fn bla_examples() {
        let f2 = FieldSpec::fp(2).unwrap();
        let s = bla0(&samples::a2(), f2, 3).unwrap();
        assert!(s.generators.is_empty());
        assert!(!s.truncated);

        let s = bla0(&samples::loop1(), f2, 2).unwrap();
        assert_eq!(s.generators.len(), 2);
        let mut degrees: Vec<usize> = s.generators.iter().map(|g| g.endo_degree).collect();
        degrees.sort_unstable();
        assert_eq!(degrees, vec![1, 2]);
        assert!(s.truncated);

        let s = bla0(&samples::loop1(), f2, 0).unwrap();
        assert!(s.generators.is_empty());
        assert!(s.truncated);

        let units = bla1(&samples::loop1(), f2, 2).unwrap();
        let mut orders: Vec<_> = units
            .iter()
            .map(|g| g.order().map(|o| o.to_string()))
            .collect();
        orders.sort();
        assert_eq!(orders, vec![Some("1".into()), Some("3".into())]);

        assert!(matches!(
            bla0(&samples::loop1(), FieldSpec::Q, 1),
            Err(Error::InfiniteFieldUnsupported)
        ));
    }

    #[test]
    fn rational_examples() {
        let r = k_rational(&samples::a2(), FieldSpec::fp(5).unwrap(), 1, 3).unwrap();
        assert_eq!(
            r.unit_part,
            Some(UnitCoker::Finite(
                FGAbelianGroup::cyclic(4).direct_sum(&FGAbelianGroup::cyclic(4))
            ))
        );
        assert!(r.integer_part.is_trivial());

        let r = k_rational(&samples::loop1(), FieldSpec::fp(3).unwrap(), 1, 1).unwrap();
        assert_eq!(r.unit_part, Some(UnitCoker::Finite(FGAbelianGroup::cyclic(2))));
        // dimension-one survivors over F3: the two nonzero scalars
        assert_eq!(r.integer_part, FGAbelianGroup::free(2));

        let r = k_rational(&samples::rose(2), FieldSpec::fp(2).unwrap(), 1, 1).unwrap();
        // dimension-one modules (a,b) != (0,0), pairwise distinct
        assert_eq!(r.integer_part, FGAbelianGroup::free(3));

        assert!(matches!(
            k_rational(&samples::loop1(), FieldSpec::fp(3).unwrap(), 2, 1),
            Err(Error::UnsupportedDegree(2))
        ));
    }

    #[test]
    fn regular_examples() {
        let q = samples::loop1();
        let f3 = FieldSpec::fp(3).unwrap();
        let r = k_regular(&q, f3, 0, 1).unwrap();
        let (g, _) = k0_leavitt(&q);
        assert_eq!(r.integer_part, g);
        assert!(r.unit_part.is_none());

        let r = k_regular(&q, f3, 1, 1).unwrap();
        assert_eq!(r.unit_part, Some(UnitCoker::Finite(FGAbelianGroup::cyclic(2))));
        // one Leavitt kernel copy plus one copy per survivor
        assert_eq!(r.integer_part, FGAbelianGroup::free(3));
        let bla = r.bla_part.unwrap();
        assert_eq!(bla.generators.len(), 2);
        assert_eq!(r.integer_part.free_rank, 1 + bla.generators.len());

        // acyclic: degree 1 equals plain Leavitt K1
        let a2 = samples::a2();
        let r = k_regular(&a2, f3, 1, 4).unwrap();
        let (u, ker) = k1_leavitt(&a2, f3).unwrap();
        assert_eq!(r.unit_part, Some(u));
        assert_eq!(r.integer_part, FGAbelianGroup::free(ker));
        assert!(!r.bla_part.unwrap().truncated);
    }

    #[test]
    fn regular_degree_zero_matches_k0_on_random_quivers() {
        let mut rng = ChaCha8Rng::seed_from_u64(11);
        for _ in 0..25 {
            let d = rng.gen_range(1..=4usize);
            let na = rng.gen_range(0..=6usize);
            let arrows = (0..na)
                .map(|i| {
                    (
                        format!("a{i}"),
                        format!("v{}", rng.gen_range(0..d)),
                        format!("v{}", rng.gen_range(0..d)),
                    )
                })
                .collect();
            let q = Quiver::new((0..d).map(|v| format!("v{v}")).collect(), arrows).unwrap();
            let r = k_regular(&q, FieldSpec::fp(2).unwrap(), 0, 0).unwrap();
            let (g, _) = k0_leavitt(&q);
            assert_eq!(r.integer_part, g);
        }
    }

    #[test]
    fn leavitt_report_and_fingerprints() {
        let q = samples::loop1();
        let r = k_leavitt_report(&q, FieldSpec::Q, 0).unwrap();
        assert_eq!(r.integer_part, FGAbelianGroup::free(1));
        assert!(matches!(
            k_leavitt_report(&q, FieldSpec::Q, 3),
            Err(Error::UnsupportedDegree(3))
        ));

        let s = bla0(&q, FieldSpec::fp(2).unwrap(), 1).unwrap();
        assert_eq!(s.generators[0].fingerprint, "dims=[1];e=[[1]]");
    }
}
