//! Lambda terms over de Bruijn indices.
//!
//! Indices start at 1. An index `n` occurring under `d` binders refers to the
//! `(n - d)`-th enclosing free position when `n > d`, otherwise to the binder
//! `n` levels up. Free indices, substitution and beta reduction follow that
//! convention; substitution strips one binder level, so `{n/N}m = m - 1` for
//! `m > n`.

use std::collections::BTreeSet;
use std::fmt;

/// A lambda term in de Bruijn form. Indices are >= 1.
#[derive(Clone, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum Term {
    Index(u32),
    App(Box<Term>, Box<Term>),
    Abs(Box<Term>),
}

/// Shape of a beta-normal form: a variable, an abstraction over a normal
/// form, or a variable applied to a non-empty list of normal arguments.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum NfShape {
    Var(u32),
    Lam(Box<NfShape>),
    Spine(u32, Vec<Term>),
}

/// Error for `normalize` when the step budget runs out; carries the last
/// term reached.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct FuelExhausted {
    pub last: Term,
}

/// Error for `classify_nf` on a term that still contains a redex.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct NotNormal;

impl fmt::Display for FuelExhausted {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "fuel exhausted before reaching a normal form")
    }
}

impl fmt::Display for NotNormal {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "term is not a beta-normal form")
    }
}

impl Term {
    pub fn app(f: Term, a: Term) -> Term {
        Term::App(Box::new(f), Box::new(a))
    }

    pub fn abs(body: Term) -> Term {
        Term::Abs(Box::new(body))
    }

    /// Number of AST nodes (indices, applications, abstractions).
    pub fn size(&self) -> usize {
        match self {
            Term::Index(_) => 1,
            Term::App(f, a) => 1 + f.size() + a.size(),
            Term::Abs(b) => 1 + b.size(),
        }
    }

    /// The set of free indices, adjusted to the outside of the term:
    /// an abstraction drops occurrences of 1 and shifts the rest down.
    pub fn free_indices(&self) -> BTreeSet<u32> {
        match self {
            Term::Index(n) => [*n].into_iter().collect(),
            Term::App(f, a) => f.free_indices().union(&a.free_indices()).copied().collect(),
            Term::Abs(b) => b
                .free_indices()
                .into_iter()
                .filter(|&n| n > 1)
                .map(|n| n - 1)
                .collect(),
        }
    }

    /// The largest free index, 0 for a closed term. Computed directly; agrees
    /// with `max(free_indices)` (checked by a property test).
    pub fn sup(&self) -> u32 {
        match self {
            Term::Index(n) => *n,
            Term::App(f, a) => f.sup().max(a.sup()),
            Term::Abs(b) => b.sup().saturating_sub(1),
        }
    }

    /// Increment every free index by one (written `N+`): indices above the
    /// cutoff go up, the cutoff starts at 0 and grows under binders.
    pub fn lift(&self) -> Term {
        self.lift_above(0)
    }

    fn lift_above(&self, cutoff: u32) -> Term {
        match self {
            Term::Index(n) => Term::Index(if *n > cutoff { n + 1 } else { *n }),
            Term::App(f, a) => Term::app(f.lift_above(cutoff), a.lift_above(cutoff)),
            Term::Abs(b) => Term::abs(b.lift_above(cutoff + 1)),
        }
    }

    /// Substitution `{n/N}M`: replaces index `n` by `N` and closes the gap,
    /// so indices above `n` come down by one. Under a binder the target index
    /// and the replacement are lifted.
    pub fn subst(&self, n: u32, replacement: &Term) -> Term {
        match self {
            Term::Index(m) => {
                if *m > n {
                    Term::Index(m - 1)
                } else if *m == n {
                    replacement.clone()
                } else {
                    Term::Index(*m)
                }
            }
            Term::App(f, a) => Term::app(f.subst(n, replacement), a.subst(n, replacement)),
            Term::Abs(b) => Term::abs(b.subst(n + 1, &replacement.lift())),
        }
    }

    /// One step of leftmost-outermost beta reduction, `None` on normal forms.
    pub fn beta_step(&self) -> Option<Term> {
        match self {
            Term::Index(_) => None,
            Term::App(f, a) => {
                if let Term::Abs(body) = f.as_ref() {
                    Some(body.subst(1, a))
                } else if let Some(f2) = f.beta_step() {
                    Some(Term::app(f2, a.as_ref().clone()))
                } else {
                    a.beta_step().map(|a2| Term::app(f.as_ref().clone(), a2))
                }
            }
            Term::Abs(b) => b.beta_step().map(Term::abs),
        }
    }

    /// Reduce to beta-normal form, spending one fuel unit per step.
    pub fn normalize(&self, fuel: u64) -> Result<Term, FuelExhausted> {
        let mut current = self.clone();
        for _ in 0..fuel {
            match current.beta_step() {
                Some(next) => current = next,
                None => return Ok(current),
            }
        }
        if current.beta_step().is_none() {
            Ok(current)
        } else {
            Err(FuelExhausted { last: current })
        }
    }

    /// True iff no redex occurs anywhere in the term.
    pub fn is_beta_nf(&self) -> bool {
        match self {
            Term::Index(_) => true,
            Term::Abs(b) => b.is_beta_nf(),
            Term::App(f, a) => {
                !matches!(f.as_ref(), Term::Abs(_)) && f.is_beta_nf() && a.is_beta_nf()
            }
        }
    }

    /// Classify a beta-normal form as a variable, an abstraction, or a spine
    /// `n N1 ... Nm` with m >= 1 normal arguments.
    pub fn classify_nf(&self) -> Result<NfShape, NotNormal> {
        match self {
            Term::Index(n) => Ok(NfShape::Var(*n)),
            Term::Abs(b) => Ok(NfShape::Lam(Box::new(b.classify_nf()?))),
            Term::App(_, _) => {
                let mut args = Vec::new();
                let mut head = self;
                while let Term::App(f, a) = head {
                    if !a.is_beta_nf() {
                        return Err(NotNormal);
                    }
                    args.push(a.as_ref().clone());
                    head = f;
                }
                args.reverse();
                match head {
                    Term::Index(n) => Ok(NfShape::Spine(*n, args)),
                    _ => Err(NotNormal),
                }
            }
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn idx(n: u32) -> Term {
        Term::Index(n)
    }

    #[test]
    fn free_indices_of_index_is_singleton() {
        assert_eq!(idx(3).free_indices(), [3].into_iter().collect());
    }

    #[test]
    fn free_indices_under_abstraction_shift_down() {
        // \.(1 3): the 1 is bound, the 3 becomes free index 2 outside.
        let t = Term::abs(Term::app(idx(1), idx(3)));
        assert_eq!(t.free_indices(), [2].into_iter().collect());
    }

    #[test]
    fn free_indices_of_application_union() {
        let t = Term::app(idx(1), Term::abs(idx(3)));
        assert_eq!(t.free_indices(), [1, 2].into_iter().collect());
    }

    #[test]
    fn sup_examples() {
        assert_eq!(Term::abs(idx(3)).sup(), 2);
        assert_eq!(Term::abs(idx(1)).sup(), 0);
        assert_eq!(Term::abs(Term::abs(idx(1))).sup(), 0);
        assert_eq!(idx(4).sup(), 4);
    }

    #[test]
    fn lift_increments_free_indices_only() {
        // \.2 has free index 1 inside at depth 1; lifting gives \.3.
        assert_eq!(Term::abs(idx(2)).lift(), Term::abs(idx(3)));
        // Bound index untouched.
        assert_eq!(Term::abs(idx(1)).lift(), Term::abs(idx(1)));
        assert_eq!(idx(1).lift(), idx(2));
    }

    #[test]
    fn subst_index_cases() {
        // m > n: comes down by one (the replacement is irrelevant).
        assert_eq!(idx(2).subst(1, &idx(5)), idx(1));
        // m = n: replaced.
        assert_eq!(idx(1).subst(1, &idx(5)), idx(5));
        // m < n: untouched.
        assert_eq!(idx(1).subst(2, &idx(5)), idx(1));
    }

    #[test]
    fn subst_under_binder_lifts_replacement() {
        // {1/3}(\.1) = \.{2/4}1 = \.1
        let t = Term::abs(idx(1));
        assert_eq!(t.subst(1, &idx(3)), Term::abs(idx(1)));
        // {1/3}(\.2) = \.{2/4}2 = \.4
        let t = Term::abs(idx(2));
        assert_eq!(t.subst(1, &idx(3)), Term::abs(idx(4)));
    }

    #[test]
    fn beta_step_contracts_leftmost_outermost() {
        // (\.2) 1 -> {1/1}2 = 1
        let t = Term::app(Term::abs(idx(2)), idx(1));
        assert_eq!(t.beta_step(), Some(idx(1)));
        // Normal forms have no step.
        assert_eq!(idx(1).beta_step(), None);
        let spine = Term::app(idx(1), Term::abs(idx(1)));
        assert_eq!(spine.beta_step(), None);
    }

    #[test]
    fn beta_step_prefers_the_outer_redex() {
        // (\.1) ((\.1) 2): head position first.
        let inner = Term::app(Term::abs(idx(1)), idx(2));
        let t = Term::app(Term::abs(idx(1)), inner.clone());
        assert_eq!(t.beta_step(), Some(inner));
    }

    #[test]
    fn normalize_contracts_to_nf() {
        // (\.\.1) 3 -> {1/3}(\.1) = \.1
        let t = Term::app(Term::abs(Term::abs(idx(1))), idx(3));
        assert_eq!(t.normalize(100), Ok(Term::abs(idx(1))));
    }

    #[test]
    fn normalize_omega_exhausts_fuel() {
        // (\.1 1)(\.1 1) loops forever.
        let dup = Term::abs(Term::app(idx(1), idx(1)));
        let omega = Term::app(dup.clone(), dup);
        let r = omega.clone().normalize(50);
        assert_eq!(r, Err(FuelExhausted { last: omega }));
    }

    #[test]
    fn normal_form_recognition() {
        assert!(idx(1).is_beta_nf());
        assert!(Term::abs(Term::app(idx(1), idx(1))).is_beta_nf());
        assert!(!Term::app(Term::abs(idx(1)), idx(1)).is_beta_nf());
        // Redex under a binder.
        assert!(!Term::abs(Term::app(Term::abs(idx(1)), idx(1))).is_beta_nf());
    }

    #[test]
    fn classify_spine() {
        // 2 (\.1) 1 is a spine with head 2 and two arguments.
        let t = Term::app(Term::app(idx(2), Term::abs(idx(1))), idx(1));
        assert_eq!(
            t.classify_nf(),
            Ok(NfShape::Spine(2, vec![Term::abs(idx(1)), idx(1)]))
        );
    }

    #[test]
    fn classify_rejects_redexes() {
        let t = Term::app(Term::abs(idx(1)), idx(1));
        assert_eq!(t.classify_nf(), Err(NotNormal));
        // Redex in argument position.
        let t = Term::app(idx(1), Term::app(Term::abs(idx(1)), idx(1)));
        assert_eq!(t.classify_nf(), Err(NotNormal));
    }

    #[test]
    fn classify_nested_abstraction() {
        let t = Term::abs(Term::abs(idx(2)));
        assert_eq!(
            t.classify_nf(),
            Ok(NfShape::Lam(Box::new(NfShape::Lam(Box::new(NfShape::Var(
                2
            ))))))
        );
    }
}
