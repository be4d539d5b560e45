//! The type systems SM and SM_r: explicit derivations, a rule-by-rule
//! checker, and a syntax-directed decision procedure for typings of
//! beta-normal forms.
//!
//! SM types index 1 with any single type (rule `var`); SM_r restricts that
//! leaf to types `s1 -> ... -> sn -> a` whose arrow sources are single types
//! (rule `var_r`), which is what makes principal typings exist. Every SM_r
//! derivation is an SM derivation, so a `var_r`-tagged node is re-validated
//! as `var` when checking under SM, while `var`-tagged nodes are rejected
//! under SM_r.
//!
//! Valid derivations are relevant: the context length equals the largest
//! free index of the subject and an entry is omega exactly when its index
//! does not occur free. The normal-form checker uses that as a gate before
//! decomposing the term.

use crate::term::{NfShape, Term};
use crate::ty::{Ctx, Inter, Ty, Typing};
use std::collections::BTreeSet;
use std::fmt;

/// Which system to check against.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum System {
    Sm,
    SmR,
}

impl fmt::Display for System {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            System::Sm => write!(f, "sm"),
            System::SmR => write!(f, "smr"),
        }
    }
}

/// Rule tags. The two primed rules are the omega variants: `->'i` abstracts
/// over an index that does not occur, `->'e` applies a function that ignores
/// its argument.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Rule {
    Var,
    VarR,
    VarN,
    ArrI,
    ArrIPrime,
    ArrE,
    ArrEPrime,
}

/// A derivation tree; every node carries its subject term and typing.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Derivation {
    pub rule: Rule,
    pub term: Term,
    pub typing: Typing,
    pub premises: Vec<Derivation>,
}

/// A rejected derivation node: the path from the root (premise indices) and
/// what went wrong there.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct RuleViolation {
    pub path: Vec<usize>,
    pub msg: String,
}

impl fmt::Display for RuleViolation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.path.is_empty() {
            write!(f, "at the root: {}", self.msg)
        } else {
            let path: Vec<String> = self.path.iter().map(usize::to_string).collect();
            write!(f, "at premise path {}: {}", path.join("."), self.msg)
        }
    }
}

/// Failure of the normal-form typing check.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum NfCheckError {
    /// The subject still contains a redex.
    NotNormal,
    /// No derivation exists; the message names the first clause that failed.
    NotDerivable(String),
}

impl fmt::Display for NfCheckError {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            NfCheckError::NotNormal => write!(f, "term is not a beta-normal form"),
            NfCheckError::NotDerivable(msg) => write!(f, "not derivable: {msg}"),
        }
    }
}

/// True iff every arrow source on the right spine is a single type, i.e. the
/// type fits rule `var_r`: `s1 -> ... -> sn -> a` with each `si` a type (the
/// insides of the `si` are unrestricted).
pub fn is_varr_shape(t: &Ty) -> bool {
    let (lefts, _) = t.right_spine();
    lefts.iter().all(|u| u.width() == 1)
}

/// True iff the context fits the subject: length equals the largest free
/// index and entries are omega exactly away from the free indices. Holds at
/// every node of a valid derivation.
pub fn relevance_ok(term: &Term, ctx: &Ctx) -> bool {
    let fi = term.free_indices();
    ctx.len() == term.sup() as usize
        && (1..=ctx.len()).all(|i| ctx.entry(i).is_omega() != fi.contains(&(i as u32)))
}

/// Validate every node of a derivation under the given system and return the
/// root typing.
pub fn check_derivation(d: &Derivation, sys: System) -> Result<Typing, RuleViolation> {
    let mut path = Vec::new();
    check_node(d, sys, &mut path)?;
    Ok(d.typing.clone())
}

fn violation(path: &[usize], msg: impl Into<String>) -> RuleViolation {
    RuleViolation {
        path: path.to_vec(),
        msg: msg.into(),
    }
}

fn check_node(d: &Derivation, sys: System, path: &mut Vec<usize>) -> Result<(), RuleViolation> {
    let fail = |msg: String| Err(violation(path, msg));
    match d.rule {
        Rule::Var | Rule::VarR => {
            // The leaf label is descriptive; what counts is the target
            // system's leaf rule. Under sm_r every leaf must satisfy the
            // var_r shape, and every var_r instance is a var instance, so a
            // tree can be audited under both systems.
            if !d.premises.is_empty() {
                return fail("a variable leaf takes no premises".into());
            }
            if d.term != Term::Index(1) {
                return fail("a variable leaf types index 1".into());
            }
            let ctx = &d.typing.ctx;
            if ctx.len() != 1 || ctx.entry(1).as_single() != Some(&d.typing.ty) {
                return fail("a variable leaf needs the context t.nil where t is the type".into());
            }
            if sys == System::SmR && !is_varr_shape(&d.typing.ty) {
                return fail("var_r needs every arrow source of the type to be a single type".into());
            }
            Ok(())
        }
        Rule::VarN => {
            let [p] = d.premises.as_slice() else {
                return fail("varn takes exactly one premise".into());
            };
            let Term::Index(n) = p.term else {
                return fail("varn lifts an index".into());
            };
            if d.term != Term::Index(n + 1) {
                return fail(format!("varn on index {n} must conclude index {}", n + 1));
            }
            if d.typing.ty != p.typing.ty {
                return fail("varn keeps the type".into());
            }
            if d.typing.ctx != p.typing.ctx.push_front(Inter::omega()) {
                return fail("varn prepends omega to the context".into());
            }
            check_premises(d, sys, path)
        }
        Rule::ArrI => {
            let [p] = d.premises.as_slice() else {
                return fail("->i takes exactly one premise".into());
            };
            if d.term != Term::abs(p.term.clone()) {
                return fail("->i must conclude the abstraction of its premise".into());
            }
            let Some((u, rest)) = p.typing.ctx.split_front() else {
                return fail("->i needs a non-nil premise context".into());
            };
            if d.typing.ctx != rest {
                return fail("->i drops the first context entry".into());
            }
            if d.typing.ty != Ty::arrow(u, p.typing.ty.clone()) {
                return fail("->i must conclude (first entry) -> (premise type)".into());
            }
            check_premises(d, sys, path)
        }
        Rule::ArrIPrime => {
            let [p] = d.premises.as_slice() else {
                return fail("->'i takes exactly one premise".into());
            };
            if d.term != Term::abs(p.term.clone()) {
                return fail("->'i must conclude the abstraction of its premise".into());
            }
            if !p.typing.ctx.is_nil() || !d.typing.ctx.is_nil() {
                return fail("->'i needs nil contexts".into());
            }
            if d.typing.ty != Ty::arrow(Inter::omega(), p.typing.ty.clone()) {
                return fail("->'i must conclude w -> (premise type)".into());
            }
            check_premises(d, sys, path)
        }
        Rule::ArrE => {
            let Some((f, args)) = d.premises.split_first() else {
                return fail("->e takes a function premise and argument premises".into());
            };
            if args.is_empty() {
                return fail("->e needs at least one argument premise".into());
            }
            let Ty::Arrow(u, rest) = &f.typing.ty else {
                return fail("->e needs an arrow-typed function premise".into());
            };
            if u.width() != args.len() {
                return fail(format!(
                    "->e needs one argument premise per intersection member: width {} with {} premises",
                    u.width(),
                    args.len()
                ));
            }
            let arg_term = &args[0].term;
            if args.iter().any(|a| &a.term != arg_term) {
                return fail("->e argument premises must share their subject".into());
            }
            if d.term != Term::app(f.term.clone(), arg_term.clone()) {
                return fail("->e must conclude the application of its premises".into());
            }
            let premise_types: Inter = args.iter().map(|a| a.typing.ty.clone()).collect();
            if &premise_types != u {
                return fail("->e premise types must form the intersection on the arrow".into());
            }
            if d.typing.ty != **rest {
                return fail("->e concludes the arrow target".into());
            }
            let combined = d
                .premises
                .iter()
                .fold(Ctx::nil(), |acc, p| acc.and(&p.typing.ctx));
            if d.typing.ctx != combined {
                return fail("->e joins all premise contexts pointwise".into());
            }
            check_premises(d, sys, path)
        }
        Rule::ArrEPrime => {
            let [f, a] = d.premises.as_slice() else {
                return fail("->'e takes a function premise and one argument premise".into());
            };
            match &f.typing.ty {
                Ty::Arrow(u, rest) if u.is_omega() => {
                    if d.typing.ty != **rest {
                        return fail("->'e concludes the arrow target".into());
                    }
                }
                _ => return fail("->'e needs a function premise typed w -> t".into()),
            }
            if d.term != Term::app(f.term.clone(), a.term.clone()) {
                return fail("->'e must conclude the application of its premises".into());
            }
            if d.typing.ctx != f.typing.ctx.and(&a.typing.ctx) {
                return fail("->'e joins the two premise contexts pointwise".into());
            }
            check_premises(d, sys, path)
        }
    }
}

fn check_premises(d: &Derivation, sys: System, path: &mut Vec<usize>) -> Result<(), RuleViolation> {
    for (i, p) in d.premises.iter().enumerate() {
        path.push(i);
        check_node(p, sys, path)?;
        path.pop();
    }
    Ok(())
}

/// Decide whether the beta-normal form `n` has the typing `t` and build a
/// derivation when it does. Syntax-directed: indices must find their type as
/// the single member of their entry, abstractions pop the first entry into
/// the arrow, and spines peel the head's arrow chain off the head entry and
/// distribute the remaining context over the arguments.
pub fn check_nf_typing(n: &Term, t: &Typing, sys: System) -> Result<Derivation, NfCheckError> {
    if !n.is_beta_nf() {
        return Err(NfCheckError::NotNormal);
    }
    check_nf(n, t, sys).map_err(NfCheckError::NotDerivable)
}

fn check_nf(n: &Term, t: &Typing, sys: System) -> Result<Derivation, String> {
    // Relevance gate: necessary for every derivable judgement.
    let sup = n.sup() as usize;
    if t.ctx.len() != sup {
        return Err(format!(
            "context length {} differs from the largest free index {sup}",
            t.ctx.len()
        ));
    }
    let fi = n.free_indices();
    for i in 1..=t.ctx.len() {
        let free = fi.contains(&(i as u32));
        if t.ctx.entry(i).is_omega() == free {
            return Err(format!(
                "position {i} must be {} (index {i} {})",
                if free { "non-omega" } else { "omega" },
                if free { "occurs free" } else { "is not free" }
            ));
        }
    }
    match n.classify_nf().expect("checked normal above") {
        NfShape::Var(k) => {
            let entry = t.ctx.entry(k as usize);
            if entry.as_single() != Some(&t.ty) {
                return Err(format!(
                    "entry {k} must be exactly the single type of the judgement"
                ));
            }
            if sys == System::SmR && !is_varr_shape(&t.ty) {
                return Err("index types in sm_r need single-type arrow sources".into());
            }
            Ok(var_chain(k, t.ty.clone(), sys))
        }
        NfShape::Lam(_) => {
            let Term::Abs(body) = n else { unreachable!() };
            let Ty::Arrow(u, rest) = &t.ty else {
                return Err("an abstraction needs an arrow type".into());
            };
            if t.ctx.is_nil() && u.is_omega() {
                let premise = check_nf(body, &Typing::new(Ctx::nil(), (**rest).clone()), sys)?;
                Ok(Derivation {
                    rule: Rule::ArrIPrime,
                    term: n.clone(),
                    typing: t.clone(),
                    premises: vec![premise],
                })
            } else {
                let inner = Typing::new(t.ctx.push_front(u.clone()), (**rest).clone());
                let premise = check_nf(body, &inner, sys)?;
                Ok(Derivation {
                    rule: Rule::ArrI,
                    term: n.clone(),
                    typing: t.clone(),
                    premises: vec![premise],
                })
            }
        }
        NfShape::Spine(k, args) => check_spine(k, &args, t, sys),
    }
}

/// Leaf derivation for index `k` at type `ty`: `var`/`var_r` plus `k - 1`
/// applications of `varn`.
fn var_chain(k: u32, ty: Ty, sys: System) -> Derivation {
    let leaf_rule = match sys {
        System::Sm => Rule::Var,
        System::SmR => Rule::VarR,
    };
    let mut d = Derivation {
        rule: leaf_rule,
        term: Term::Index(1),
        typing: Typing::new(Ctx::new(vec![Inter::single(ty.clone())]), ty.clone()),
        premises: Vec::new(),
    };
    for j in 2..=k {
        d = Derivation {
            rule: Rule::VarN,
            term: Term::Index(j),
            typing: Typing::new(d.typing.ctx.push_front(Inter::omega()), ty.clone()),
            premises: vec![d],
        };
    }
    d
}

/// One premise slot of a spine step: which argument it types and at which
/// type. `None` is the omega case of SM, where the argument may take any
/// type ->'e will discard.
type Slot = (usize, Option<Ty>);

fn check_spine(k: u32, args: &[Term], t: &Typing, sys: System) -> Result<Derivation, String> {
    let m = args.len();
    let head_entry = t.ctx.entry(k as usize);
    let arg_fis: Vec<BTreeSet<u32>> = args.iter().map(Term::free_indices).collect();
    let mut seen = BTreeSet::new();
    for h in head_entry.iter() {
        if !seen.insert(h.clone()) {
            continue;
        }
        let Some((lefts, target)) = h.strip_arrows(m) else {
            continue;
        };
        if target != &t.ty {
            continue;
        }
        if sys == System::SmR && !is_varr_shape(h) {
            continue;
        }
        let mut slots: Vec<Slot> = Vec::new();
        for (i, u) in lefts.iter().enumerate() {
            if u.is_omega() {
                // Unreachable under SM_r: var_r shapes have no omega source.
                slots.push((i, None));
            } else {
                for e in u.iter() {
                    slots.push((i, Some(e.clone())));
                }
            }
        }
        let head_part = Ctx::padded(k as usize, Inter::single(h.clone()));
        let residual = t
            .ctx
            .minus(&head_part)
            .expect("the candidate came from the head entry");
        let mut elems: Vec<(usize, Ty)> = Vec::new();
        for p in 1..=residual.len() {
            for e in residual.entry(p).iter() {
                elems.push((p, e.clone()));
            }
        }
        let mut buckets: Vec<Vec<(usize, Ty)>> = vec![Vec::new(); slots.len()];
        if let Some(premises) =
            assign_elems(&elems, 0, &slots, &mut buckets, args, &arg_fis, sys)
        {
            return Ok(assemble_spine(k, h.clone(), args, &slots, premises, t, sys));
        }
    }
    Err(format!(
        "no member of entry {k} matches {} arrow(s) onto the result type with a context split that types every argument",
        m
    ))
}

/// Distribute the residual context elements over the premise slots. An
/// element at position p may only serve an argument with p free. Once all
/// elements are placed, every slot is checked recursively; any failure
/// backtracks into the next placement.
fn assign_elems(
    elems: &[(usize, Ty)],
    at: usize,
    slots: &[Slot],
    buckets: &mut Vec<Vec<(usize, Ty)>>,
    args: &[Term],
    arg_fis: &[BTreeSet<u32>],
    sys: System,
) -> Option<Vec<Derivation>> {
    if at == elems.len() {
        return check_slots(slots, buckets, args, arg_fis, sys);
    }
    let (p, e) = &elems[at];
    for (si, (arg_i, _)) in slots.iter().enumerate() {
        if !arg_fis[*arg_i].contains(&(*p as u32)) {
            continue;
        }
        buckets[si].push((*p, e.clone()));
        if let Some(premises) = assign_elems(elems, at + 1, slots, buckets, args, arg_fis, sys) {
            return Some(premises);
        }
        buckets[si].pop();
    }
    None
}

fn check_slots(
    slots: &[Slot],
    buckets: &[Vec<(usize, Ty)>],
    args: &[Term],
    arg_fis: &[BTreeSet<u32>],
    sys: System,
) -> Option<Vec<Derivation>> {
    let mut premises = Vec::with_capacity(slots.len());
    for (si, (arg_i, slot_ty)) in slots.iter().enumerate() {
        let arg = &args[*arg_i];
        let len = arg.sup() as usize;
        let mut entries = vec![Vec::new(); len];
        for (p, e) in &buckets[si] {
            entries[p - 1].push(e.clone());
        }
        // Every free index of the argument needs at least one element here,
        // otherwise the relevance gate below would reject anyway.
        if arg_fis[*arg_i]
            .iter()
            .any(|i| entries[*i as usize - 1].is_empty())
        {
            return None;
        }
        let ctx = Ctx::new(entries.into_iter().map(Inter::from_elems).collect());
        let premise = match slot_ty {
            Some(ty) => check_nf(arg, &Typing::new(ctx, ty.clone()), sys).ok()?,
            None => {
                // SM with an omega source: the argument may take any type,
                // but its context share is fixed. Match the context of the
                // argument's principal typing against the share and check
                // the resulting instance.
                let principal = crate::infer::infer(arg).ok()?;
                let s = crate::ty::match_ctx(&principal.ctx, &ctx)?;
                check_nf(arg, &Typing::new(ctx, s.apply_ty(&principal.ty)), System::Sm).ok()?
            }
        };
        premises.push(premise);
    }
    Some(premises)
}

/// Fold the head chain into nested applications: one ->e per non-omega arrow
/// source (its premises in slot order) and one ->'e per omega source.
fn assemble_spine(
    k: u32,
    h: Ty,
    args: &[Term],
    slots: &[Slot],
    premises: Vec<Derivation>,
    t: &Typing,
    sys: System,
) -> Derivation {
    let mut d = var_chain(k, h.clone(), sys);
    let mut remaining = h;
    let mut premise_iter = premises.into_iter();
    let mut slot_iter = slots.iter();
    for (i, arg) in args.iter().enumerate() {
        let Ty::Arrow(u, rest) = remaining else {
            unreachable!("the candidate stripped one arrow per argument")
        };
        let term = Term::app(d.term.clone(), arg.clone());
        let mut node_premises = vec![d];
        let mut ctx = node_premises[0].typing.ctx.clone();
        let count = if u.is_omega() { 1 } else { u.width() };
        for _ in 0..count {
            let (arg_i, _) = slot_iter.next().expect("one slot per premise");
            debug_assert_eq!(*arg_i, i);
            let p = premise_iter.next().expect("one derivation per slot");
            ctx = ctx.and(&p.typing.ctx);
            node_premises.push(p);
        }
        let rule = if u.is_omega() { Rule::ArrEPrime } else { Rule::ArrE };
        d = Derivation {
            rule,
            term,
            typing: Typing::new(ctx, (*rest).clone()),
            premises: node_premises,
        };
        remaining = *rest;
    }
    debug_assert_eq!(&d.typing, t, "the reassembled context must equal the input");
    d
}

/// The failure of subject reduction and expansion on one beta step.
#[derive(Clone, Debug)]
pub struct SrReport {
    /// `(\. \. 1) 3`
    pub redex: Term,
    /// Its typing `w.w.a1.nil |- a0->a0`, derivable in SM.
    pub typing: Typing,
    /// The checked derivation of that judgement.
    pub redex_derivation: Derivation,
    /// One beta step later: `\. 1`.
    pub contractum: Term,
    /// Why the contractum cannot keep the typing (relevance).
    pub contractum_rejection: String,
    /// The contractum is typeable, but only with the nil context.
    pub contractum_nil_typing: Typing,
}

impl fmt::Display for SrReport {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        writeln!(f, "redex:          {}", self.redex)?;
        writeln!(f, "typing:         {}   (derivable in sm)", self.typing)?;
        writeln!(f, "one beta step:  {}", self.contractum)?;
        writeln!(f, "same typing:    {}", self.contractum_rejection)?;
        writeln!(
            f,
            "nil context:    {}   (derivable in sm)",
            self.contractum_nil_typing
        )?;
        write!(
            f,
            "the context shrinks with the erased argument, so neither subject reduction nor subject expansion holds"
        )
    }
}

/// Build and verify the standard counterexample: `(\. \. 1) 3` is typeable
/// with context `w.w.a1.nil`, its contractum `\. 1` is closed and therefore
/// only typeable with the nil context.
pub fn sr_counterexample() -> Result<SrReport, String> {
    let a0 = Ty::var(0);
    let a1 = Ty::var(1);
    let id_ty = Ty::arrow1(a0.clone(), a0.clone());

    // 1 : a0.nil |- a0,  \.1 : nil |- a0->a0,  \.\.1 : nil |- w->a0->a0
    let d_one = Derivation {
        rule: Rule::Var,
        term: Term::Index(1),
        typing: Typing::new(Ctx::new(vec![Inter::single(a0.clone())]), a0.clone()),
        premises: Vec::new(),
    };
    let d_id = Derivation {
        rule: Rule::ArrI,
        term: Term::abs(Term::Index(1)),
        typing: Typing::new(Ctx::nil(), id_ty.clone()),
        premises: vec![d_one],
    };
    let d_const = Derivation {
        rule: Rule::ArrIPrime,
        term: Term::abs(Term::abs(Term::Index(1))),
        typing: Typing::new(Ctx::nil(), Ty::arrow(Inter::omega(), id_ty.clone())),
        premises: vec![d_id],
    };
    // 3 : w.w.a1.nil |- a1 by var + varn + varn.
    let mut d_three = Derivation {
        rule: Rule::Var,
        term: Term::Index(1),
        typing: Typing::new(Ctx::new(vec![Inter::single(a1.clone())]), a1.clone()),
        premises: Vec::new(),
    };
    for j in 2..=3 {
        d_three = Derivation {
            rule: Rule::VarN,
            term: Term::Index(j),
            typing: Typing::new(d_three.typing.ctx.push_front(Inter::omega()), a1.clone()),
            premises: vec![d_three],
        };
    }
    let redex = Term::app(Term::abs(Term::abs(Term::Index(1))), Term::Index(3));
    let typing = Typing::new(d_three.typing.ctx.clone(), id_ty.clone());
    let d_redex = Derivation {
        rule: Rule::ArrEPrime,
        term: redex.clone(),
        typing: typing.clone(),
        premises: vec![d_const, d_three],
    };

    check_derivation(&d_redex, System::Sm)
        .map_err(|v| format!("the redex derivation must be valid in sm: {v}"))?;
    let contractum = redex
        .beta_step()
        .ok_or_else(|| "the redex must contract".to_string())?;
    if contractum != Term::abs(Term::Index(1)) {
        return Err("the contractum must be \\. 1".into());
    }
    let rejection = match check_nf_typing(&contractum, &typing, System::Sm) {
        Err(NfCheckError::NotDerivable(msg)) => format!("not derivable: {msg}"),
        Ok(_) => return Err("the contractum must not keep the typing".into()),
        Err(e) => return Err(format!("unexpected failure: {e}")),
    };
    let nil_typing = Typing::new(Ctx::nil(), id_ty);
    check_nf_typing(&contractum, &nil_typing, System::Sm)
        .map_err(|e| format!("the contractum must be typeable with nil: {e}"))?;
    Ok(SrReport {
        redex,
        typing,
        redex_derivation: d_redex,
        contractum,
        contractum_rejection: rejection,
        contractum_nil_typing: nil_typing,
    })
}
