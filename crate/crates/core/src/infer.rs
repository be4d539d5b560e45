//! Principal typing inference for beta-normal forms.
//!
//! `infer` is syntax-directed on the three normal-form shapes. An index n
//! gets a fresh variable at position n of an otherwise-omega context; an
//! abstraction pops the first context entry onto an arrow (omega when the
//! context is nil); a spine `n N1 ... Nm` infers the arguments left to
//! right, types the head `s1 -> ... -> sm -> a` with the inferred argument
//! types as single-type sources and a fresh result variable, and joins the
//! head entry with the argument contexts pointwise.
//!
//! The result is derivable in SM_r (`infer_checked` verifies that and hands
//! back the derivation), and every SM_r typing of the same term is a
//! substitution instance of it (`completeness_witness` finds the
//! substitution).

use crate::systems::{check_nf_typing, Derivation, System};
use crate::term::{NfShape, NotNormal, Term};
use crate::ty::{match_typing, Ctx, Inter, Subst, Ty, Typing};
use std::fmt;

/// A counter handing out `a0, a1, ...` in order.
#[derive(Clone, Debug, Default)]
pub struct FreshSupply(u32);

impl FreshSupply {
    pub fn new() -> FreshSupply {
        FreshSupply(0)
    }

    /// Start the numbering at `n` instead of 0.
    pub fn starting_at(n: u32) -> FreshSupply {
        FreshSupply(n)
    }

    pub fn fresh(&mut self) -> Ty {
        let v = Ty::var(self.0);
        self.0 += 1;
        v
    }
}

/// Infer the principal typing of a beta-normal form, numbering fresh
/// variables from `a0`.
pub fn infer(n: &Term) -> Result<Typing, NotNormal> {
    infer_with(n, &mut FreshSupply::new())
}

/// Same, drawing fresh variables from the given supply; the result is the
/// same typing up to renaming whatever the supply's start.
pub fn infer_with(n: &Term, supply: &mut FreshSupply) -> Result<Typing, NotNormal> {
    let shape = n.classify_nf()?;
    Ok(infer_shape(&shape, supply))
}

fn infer_shape(shape: &NfShape, supply: &mut FreshSupply) -> Typing {
    match shape {
        NfShape::Var(k) => {
            let a = supply.fresh();
            Typing::new(Ctx::padded(*k as usize, Inter::single(a.clone())), a)
        }
        NfShape::Lam(body) => {
            let t = infer_shape(body, supply);
            match t.ctx.split_front() {
                Some((u, rest)) => Typing::new(rest, Ty::arrow(u, t.ty)),
                None => Typing::new(Ctx::nil(), Ty::arrow(Inter::omega(), t.ty)),
            }
        }
        NfShape::Spine(k, args) => {
            let arg_typings: Vec<Typing> = args
                .iter()
                .map(|a| {
                    let shape = a
                        .classify_nf()
                        .expect("spine arguments of a normal form are normal");
                    infer_shape(&shape, supply)
                })
                .collect();
            let result = supply.fresh();
            let head_ty = arg_typings.iter().rev().fold(result.clone(), |acc, t| {
                Ty::arrow(Inter::single(t.ty.clone()), acc)
            });
            let mut ctx = Ctx::padded(*k as usize, Inter::single(head_ty));
            for t in &arg_typings {
                ctx = ctx.and(&t.ctx);
            }
            Typing::new(ctx, result)
        }
    }
}

/// Infer and verify: the typing is checked to be derivable in SM_r and the
/// checked derivation is returned alongside it.
pub fn infer_checked(n: &Term) -> Result<(Typing, Derivation), NotNormal> {
    let typing = infer(n)?;
    let d = check_nf_typing(n, &typing, System::SmR)
        .expect("inferred typings are derivable in sm_r");
    Ok((typing, d))
}

/// No substitution maps the inferred typing onto the candidate (or the term
/// is not a beta-normal form, so it has no inferred typing to instantiate).
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct NoWitness;

impl fmt::Display for NoWitness {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(
            f,
            "the typing is not a substitution instance of the inferred typing"
        )
    }
}

/// Exhibit completeness on one candidate: a substitution sending the
/// inferred typing of `n` exactly onto `t`. Every typing of `n` derivable in
/// SM_r has one.
pub fn completeness_witness(n: &Term, t: &Typing) -> Result<Subst, NoWitness> {
    let principal = infer(n).map_err(|_| NoWitness)?;
    match_typing(&principal, t).ok_or(NoWitness)
}
