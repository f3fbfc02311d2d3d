//! The three necessary conditions a fibred knot's twisted Alexander module
//! satisfies: it is torsion, its elementary ideal is principal, and its
//! polynomial is monic.

use std::fmt;

use crate::exactla::{maximal_minors, rank_over_fractions, GroupOrder, Matrix};
use crate::laurent::{CanonicalForm, Laurent};
use crate::scalar::Coeff;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum Torsion {
    Yes,
    No,
    Unknown,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum Principal {
    /// The presentation is square, so the ideal is generated by its
    /// determinant.
    Yes,
    Unknown,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum Monic {
    Yes,
    No,
    /// The polynomial is zero.
    Undefined,
    /// The minors were not enumerated because of the size cap.
    Unknown,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum Verdict {
    ConsistentWithFibred,
    NotFibred,
    Inconclusive,
}

impl Verdict {
    pub fn from_fields(torsion: Torsion, principal: Principal, monic: Monic) -> Verdict {
        if torsion == Torsion::No || monic == Monic::No {
            Verdict::NotFibred
        } else if torsion == Torsion::Yes && principal == Principal::Yes && monic == Monic::Yes {
            Verdict::ConsistentWithFibred
        } else {
            Verdict::Inconclusive
        }
    }

    pub fn as_str(self) -> &'static str {
        match self {
            Verdict::ConsistentWithFibred => "consistent-with-fibred",
            Verdict::NotFibred => "NOT-fibred-certificate",
            Verdict::Inconclusive => "inconclusive",
        }
    }
}

impl fmt::Display for Verdict {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.as_str())
    }
}

macro_rules! field_display {
    ($ty:ty, $($variant:ident => $text:literal),+) => {
        impl $ty {
            pub fn as_str(self) -> &'static str {
                match self {
                    $(Self::$variant => $text),+
                }
            }
        }

        impl fmt::Display for $ty {
            fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
                f.write_str(self.as_str())
            }
        }
    };
}

field_display!(Torsion, Yes => "yes", No => "no", Unknown => "unknown");
field_display!(Principal, Yes => "yes", Unknown => "unknown");
field_display!(Monic, Yes => "yes", No => "no", Undefined => "undefined", Unknown => "unknown");

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ObstructionReport<T: Coeff> {
    pub generators: usize,
    pub relations: usize,
    pub rank: usize,
    pub torsion: Torsion,
    pub principal: Principal,
    pub monic: Monic,
    /// `None` when the minor enumeration hit its cap.
    pub delta: Option<CanonicalForm<T>>,
    pub verdict: Verdict,
    pub reasons: Vec<String>,
}

impl<T: Coeff> ObstructionReport<T> {
    /// True when the minor enumeration was skipped for size.
    pub fn hit_size_cap(&self) -> bool {
        self.monic == Monic::Unknown
    }
}

/// Evaluates the three conditions on a presentation matrix whose rows are
/// generators and columns relations.
pub fn evaluate_fibred_obstruction<T: Coeff>(p: &Matrix<Laurent<T>>, max_minors: u128) -> ObstructionReport<T> {
    let (generators, relations) = (p.rows(), p.cols());
    let mut reasons = Vec::new();

    let rank = rank_over_fractions(p);
    let torsion = if rank == generators {
        Torsion::Yes
    } else {
        reasons.push(format!(
            "torsion condition fails: rank over the fraction field is {rank} but there are {generators} generators"
        ));
        Torsion::No
    };

    let principal = if generators == relations {
        Principal::Yes
    } else {
        reasons.push(format!("principality unknown: presentation is {generators}x{relations}, not square"));
        Principal::Unknown
    };

    let (delta, monic) = match maximal_minors(p, max_minors) {
        Ok(ideal) => {
            let monic = if ideal.delta.is_zero() {
                reasons.push("monic condition undefined: the polynomial is zero".to_string());
                Monic::Undefined
            } else if ideal.delta.is_monic() {
                Monic::Yes
            } else {
                reasons.push(format!("monic condition fails: {} is not monic", ideal.delta));
                Monic::No
            };
            (Some(ideal.delta), monic)
        }
        Err(e) => {
            reasons.push(format!("monic condition unknown: {e}"));
            (None, Monic::Unknown)
        }
    };

    ObstructionReport {
        generators,
        relations,
        rank,
        torsion,
        principal,
        monic,
        delta,
        verdict: Verdict::from_fields(torsion, principal, monic),
        reasons,
    }
}

/// Whether a module that surjects onto `A ⊗ Λ`, for the finite or infinite
/// abelian group `A` of the given order, can be the module described by the
/// report.
///
/// `A ⊗ Λ` has no nonzero monic annihilator unless `A` is trivial, and for
/// `A` infinite no nonzero annihilator at all. A fibred knot's module is
/// annihilated by its monic polynomial, so the answer is `true` only for the
/// trivial group and a report that has a monic polynomial.
pub fn annihilator_consequence<T: Coeff>(report: &ObstructionReport<T>, group_order: &GroupOrder<T>) -> bool {
    group_order.is_trivial() && report.monic == Monic::Yes && report.torsion == Torsion::Yes
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::cover::{twisted_invariants, TwistedInvariants};
    use crate::exactla::DEFAULT_MAX_MINORS;
    use crate::freegrp::{FreeEndo, Word};
    use crate::grouphom::{Cyclic, FiniteHom};
    use num_bigint::BigInt;

    type P = Laurent<BigInt>;

    fn lm(rows: &[&[&str]], cols: usize) -> Matrix<P> {
        Matrix::from_rows(rows.iter().map(|r| r.iter().map(|s| s.parse().unwrap()).collect()).collect(), cols).unwrap()
    }

    fn trefoil_presentation() -> Matrix<P> {
        let h = FreeEndo::new(vec![Word::power_of(1, -1), Word::from_blocks([(0, 1), (1, 1)])]).unwrap();
        let alpha = FiniteHom::new(Cyclic::new(3).unwrap(), vec![1, 1]).unwrap();
        let inv: TwistedInvariants<BigInt> = twisted_invariants(&h, 2, &alpha).unwrap();
        inv.presentation
    }

    #[test]
    fn trefoil_is_consistent() {
        let r = evaluate_fibred_obstruction(&trefoil_presentation(), DEFAULT_MAX_MINORS);
        assert_eq!((r.torsion, r.principal, r.monic), (Torsion::Yes, Principal::Yes, Monic::Yes));
        assert_eq!(r.delta.unwrap().to_string(), "s^4 - s^3 - s + 1");
        assert_eq!(r.verdict, Verdict::ConsistentWithFibred);
        assert!(r.reasons.is_empty());
    }

    #[test]
    fn negative_controls() {
        let r = evaluate_fibred_obstruction(&lm(&[&["2s - 2"]], 1), DEFAULT_MAX_MINORS);
        assert_eq!(r.monic, Monic::No);
        assert_eq!(r.verdict, Verdict::NotFibred);
        assert!(r.reasons.iter().any(|l| l.starts_with("monic condition fails")));

        let r = evaluate_fibred_obstruction(&lm(&[&["0", "0"]], 2), DEFAULT_MAX_MINORS);
        assert_eq!((r.torsion, r.rank), (Torsion::No, 0));
        assert_eq!(r.monic, Monic::Undefined);
        assert_eq!(r.verdict, Verdict::NotFibred);
        assert!(r.reasons.iter().any(|l| l.starts_with("torsion condition fails")));
    }

    #[test]
    fn non_square_is_not_principal() {
        let r = evaluate_fibred_obstruction(&lm(&[&["s - 1", "s^2 - 1"]], 2), DEFAULT_MAX_MINORS);
        assert_eq!((r.torsion, r.principal, r.monic), (Torsion::Yes, Principal::Unknown, Monic::Yes));
        assert_eq!(r.verdict, Verdict::Inconclusive);
    }

    #[test]
    fn size_cap_is_inconclusive() {
        let p = Matrix::from_fn(2, 30, |i, j| if i == j { P::var() } else { P::zero() });
        let r = evaluate_fibred_obstruction(&p, 100);
        assert_eq!(r.monic, Monic::Unknown);
        assert!(r.delta.is_none() && r.hit_size_cap());
        assert_eq!(r.verdict, Verdict::Inconclusive);
    }

    #[test]
    fn verdict_is_monotone() {
        let torsions = [Torsion::Yes, Torsion::No, Torsion::Unknown];
        let monics = [Monic::Yes, Monic::No, Monic::Undefined, Monic::Unknown];
        for &t in &torsions {
            for &p in &[Principal::Yes, Principal::Unknown] {
                for &m in &monics {
                    let all = t == Torsion::Yes && p == Principal::Yes && m == Monic::Yes;
                    assert_eq!(Verdict::from_fields(t, p, m) == Verdict::ConsistentWithFibred, all);
                }
            }
        }
    }

    #[test]
    fn determinant_annihilates_square_presentations() {
        let p = trefoil_presentation();
        let det = p.det();
        let adj = p.adjugate();
        assert_eq!(&p * &adj, Matrix::identity(4).scale(&det));
        let r = evaluate_fibred_obstruction(&p, DEFAULT_MAX_MINORS);
        assert_eq!(det.canonicalize(), r.delta.unwrap());
    }

    #[test]
    fn annihilator_examples() {
        let fibred = evaluate_fibred_obstruction(&trefoil_presentation(), DEFAULT_MAX_MINORS);
        assert!(!annihilator_consequence(&fibred, &GroupOrder::Finite(BigInt::from(5))));
        assert!(annihilator_consequence(&fibred, &GroupOrder::Finite(BigInt::from(1))));
        assert!(!annihilator_consequence(&fibred, &GroupOrder::Infinite));
    }
}
