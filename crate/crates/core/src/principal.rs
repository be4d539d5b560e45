//! The characterisation of principal typings: C-types, polarity, the
//! closed / finally closed / minimally closed / complete / principal
//! predicates, final-occurrence sets, and the reconstruction algorithm that
//! inverts inference.
//!
//! The principal pairs are exactly the image of `infer`: `is_principal`
//! accepts a C-type precisely when some beta-normal form has it as its
//! inferred typing (up to renaming), and `recon` rebuilds that term.

use crate::term::Term;
use crate::ty::{Ctx, Inter, Ty, TyVar, Typing};
use std::collections::{BTreeMap, BTreeSet};
use std::fmt;

// ---- grammar ----

/// True iff every arrow along the right spine takes a single `T_NF` type on
/// the left (the element grammar of C-contexts).
pub fn is_type_c(t: &Ty) -> bool {
    match t {
        Ty::Var(_) => true,
        Ty::Arrow(u, rest) => match u.as_single() {
            Some(e) => is_type_nf(e) && is_type_c(rest),
            None => false,
        },
    }
}

/// True iff every arrow source is a multiset of `T_C` types (the grammar of
/// inferred head types).
pub fn is_type_nf(t: &Ty) -> bool {
    match t {
        Ty::Var(_) => true,
        Ty::Arrow(u, rest) => is_inter_c(u) && is_type_nf(rest),
    }
}

/// True iff every member is `T_C` (omega included, vacuously).
pub fn is_inter_c(u: &Inter) -> bool {
    u.iter().all(is_type_c)
}

/// Which of the two type grammars a type falls into; both flags false means
/// the type fits neither.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct GrammarClass {
    pub t_c: bool,
    pub t_nf: bool,
}

pub fn grammar_class(t: &Ty) -> GrammarClass {
    GrammarClass {
        t_c: is_type_c(t),
        t_nf: is_type_nf(t),
    }
}

// ---- C-types ----

/// A context of C-grammar entries with an optional `T_NF` head. The headless
/// form (used by held decompositions) must keep a non-empty context.
#[derive(Clone, Debug, PartialEq, Eq, PartialOrd, Ord)]
pub struct CType {
    context: Ctx,
    head: Option<Ty>,
}

/// Rejected C-type construction.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum CTypeError {
    /// The entry at this position is not a multiset of `T_C` types.
    ContextEntryNotUc(usize),
    /// The head is not in `T_NF`.
    HeadNotTnf,
    /// A headless C-type needs at least one context entry.
    HeadlessNilContext,
}

impl fmt::Display for CTypeError {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            CTypeError::ContextEntryNotUc(i) => {
                write!(f, "context entry {i} is not a multiset of C-grammar types")
            }
            CTypeError::HeadNotTnf => write!(f, "the head type is not in the NF grammar"),
            CTypeError::HeadlessNilContext => {
                write!(f, "a headless C-type needs a non-empty context")
            }
        }
    }
}

/// The queried operation is only defined for C-types with a head.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct HeadlessInput;

impl fmt::Display for HeadlessInput {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "the operation needs a C-type with a head")
    }
}

impl CType {
    pub fn new(context: Ctx, head: Ty) -> Result<CType, CTypeError> {
        check_context(&context)?;
        if !is_type_nf(&head) {
            return Err(CTypeError::HeadNotTnf);
        }
        Ok(CType {
            context,
            head: Some(head),
        })
    }

    pub fn headless(context: Ctx) -> Result<CType, CTypeError> {
        check_context(&context)?;
        if context.is_nil() {
            return Err(CTypeError::HeadlessNilContext);
        }
        Ok(CType {
            context,
            head: None,
        })
    }

    pub fn from_typing(t: &Typing) -> Result<CType, CTypeError> {
        CType::new(t.ctx.clone(), t.ty.clone())
    }

    pub fn context(&self) -> &Ctx {
        &self.context
    }

    pub fn head(&self) -> Option<&Ty> {
        self.head.as_ref()
    }

    pub fn to_typing(&self) -> Option<Typing> {
        self.head
            .as_ref()
            .map(|h| Typing::new(self.context.clone(), h.clone()))
    }

    /// The same C-type with trailing omega entries removed — the
    /// representative used when comparing held decompositions.
    fn trimmed(&self) -> CType {
        CType {
            context: self.context.trim_trailing_omega(),
            head: self.head.clone(),
        }
    }
}

fn check_context(ctx: &Ctx) -> Result<(), CTypeError> {
    for i in 1..=ctx.len() {
        if !is_inter_c(&ctx.entry(i)) {
            return Err(CTypeError::ContextEntryNotUc(i));
        }
    }
    Ok(())
}

impl fmt::Display for CType {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match &self.head {
            Some(h) => write!(
                f,
                "{} => {}",
                crate::syntax::print_context(&self.context),
                crate::syntax::print_type(h)
            ),
            None => write!(f, "{} =>", crate::syntax::print_context(&self.context)),
        }
    }
}

// ---- polarity ----

/// Occurrence counts of one variable in one C-type, signed by position: the
/// head counts positively, context entries negatively, and the sign flips on
/// every descent into an arrow source.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Default)]
pub struct Polarity {
    pub positive: usize,
    pub negative: usize,
}

fn count_ty(t: &Ty, positive: bool, acc: &mut BTreeMap<TyVar, Polarity>) {
    match t {
        Ty::Var(v) => {
            let p = acc.entry(*v).or_default();
            if positive {
                p.positive += 1;
            } else {
                p.negative += 1;
            }
        }
        Ty::Arrow(u, rest) => {
            for e in u.iter() {
                count_ty(e, !positive, acc);
            }
            count_ty(rest, positive, acc);
        }
    }
}

fn polarity_map(t: &CType) -> BTreeMap<TyVar, Polarity> {
    let mut acc = BTreeMap::new();
    if let Some(h) = &t.head {
        count_ty(h, true, &mut acc);
    }
    for u in t.context.entries() {
        for e in u.iter() {
            count_ty(e, false, &mut acc);
        }
    }
    acc
}

/// Signed occurrence counts of `v` in `t`; all zero when `v` does not occur.
pub fn polarity(t: &CType, v: TyVar) -> Polarity {
    polarity_map(t).remove(&v).unwrap_or_default()
}

/// True iff every occurring variable has exactly one positive and one
/// negative occurrence.
pub fn is_closed(t: &CType) -> bool {
    polarity_map(t)
        .values()
        .all(|p| p.positive == 1 && p.negative == 1)
}

// ---- left subtypes and final occurrences ----

/// The left subtypes: every non-omega context entry plus every non-omega
/// arrow source along the head's right spine (without descending into
/// members).
pub fn left_subtypes(t: &CType) -> BTreeSet<Inter> {
    let mut out: BTreeSet<Inter> = t
        .context
        .entries()
        .iter()
        .filter(|u| !u.is_omega())
        .cloned()
        .collect();
    if let Some(h) = &t.head {
        let (lefts, _) = h.right_spine();
        out.extend(lefts.into_iter().filter(|u| !u.is_omega()).cloned());
    }
    out
}

/// The final variables of the members of an intersection; empty for omega.
pub fn final_occurrences(u: &Inter) -> BTreeSet<TyVar> {
    u.iter().map(Ty::final_var).collect()
}

/// True iff the head's final variable is also a final occurrence of some
/// left subtype.
pub fn is_finally_closed(t: &CType) -> Result<bool, HeadlessInput> {
    let head = t.head().ok_or(HeadlessInput)?;
    let target = head.final_var();
    Ok(left_subtypes(t)
        .iter()
        .any(|u| final_occurrences(u).contains(&target)))
}

// ---- final-occurrence sets over contexts ----

/// One context entry that has the queried variable among its final
/// occurrences.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct FoEntry {
    pub position: usize,
    pub entry: Inter,
}

/// All context positions whose entry has `v` as a final occurrence.
pub fn fo(v: TyVar, g: &Ctx) -> Vec<FoEntry> {
    (1..=g.len())
        .filter_map(|i| {
            let entry = g.entry(i);
            final_occurrences(&entry)
                .contains(&v)
                .then_some(FoEntry { position: i, entry })
        })
        .collect()
}

// ---- held decompositions and minimal closedness ----

/// Every C-type held in `t`: `t` itself (trailing omegas trimmed), plus, for
/// every per-position sub-multiset of the context that is not all-omega,
/// both the headed and the headless variant. Results are trimmed and
/// deduplicated, in a deterministic order.
pub fn held_decompositions(t: &CType) -> Result<Vec<CType>, HeadlessInput> {
    let head = t.head().ok_or(HeadlessInput)?;
    let mut out = BTreeSet::new();
    out.insert(t.trimmed());
    let entries: Vec<Vec<Ty>> = t
        .context
        .entries()
        .iter()
        .map(|u| u.iter().cloned().collect())
        .collect();
    let mut picked: Vec<Vec<Ty>> = vec![Vec::new(); entries.len()];
    collect_subcontexts(&entries, 0, &mut picked, &mut |sub| {
        if sub.iter().all(Vec::is_empty) {
            return;
        }
        let ctx = Ctx::new(
            sub.iter()
                .map(|elems| Inter::from_elems(elems.clone()))
                .collect(),
        )
        .trim_trailing_omega();
        out.insert(CType {
            context: ctx.clone(),
            head: Some(head.clone()),
        });
        out.insert(CType {
            context: ctx,
            head: None,
        });
    });
    Ok(out.into_iter().collect())
}

/// Drive `visit` over every choice of per-position element subsets.
fn collect_subcontexts(
    entries: &[Vec<Ty>],
    at: usize,
    picked: &mut Vec<Vec<Ty>>,
    visit: &mut impl FnMut(&[Vec<Ty>]),
) {
    if at == entries.len() {
        visit(picked);
        return;
    }
    let n = entries[at].len();
    for mask in 0u32..(1 << n) {
        picked[at] = entries[at]
            .iter()
            .enumerate()
            .filter(|(j, _)| mask & (1 << j) != 0)
            .map(|(_, e)| e.clone())
            .collect();
        collect_subcontexts(entries, at + 1, picked, visit);
    }
    picked[at] = Vec::new();
}

/// True iff no strictly held decomposition (held and different from `t`
/// after trimming) is closed.
pub fn is_minimally_closed(t: &CType) -> Result<bool, HeadlessInput> {
    let me = t.trimmed();
    Ok(held_decompositions(t)?
        .iter()
        .all(|d| *d == me || !is_closed(d)))
}

/// Closed, finally closed and minimally closed.
pub fn is_complete(t: &CType) -> Result<bool, HeadlessInput> {
    if t.head.is_none() {
        return Err(HeadlessInput);
    }
    Ok(is_closed(t) && is_finally_closed(t)? && is_minimally_closed(t)?)
}

// ---- argument partition ----

/// The residual context split into one block per argument type, plus the
/// leftover that connects to none of them.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ArgPartition {
    pub blocks: Vec<Ctx>,
    pub leftover: Ctx,
}

/// The residual elements cannot be distributed unambiguously: some element
/// shares variables with two different argument types.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct NoPartition;

impl fmt::Display for NoPartition {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(
            f,
            "the context cannot be distributed unambiguously over the argument types"
        )
    }
}

/// Distribute the residual context (the full context with the head element
/// already removed) over the argument types by variable connectivity: an
/// element belongs to the block of the argument type it shares variables
/// with, directly or through other elements. Elements connected to no
/// argument form the leftover; an element connected to two arguments is an
/// ambiguity and fails.
pub fn argument_partition(residual: &Ctx, arg_types: &[Ty]) -> Result<ArgPartition, NoPartition> {
    let m = arg_types.len();
    let mut elems: Vec<(usize, Ty)> = Vec::new();
    for p in 1..=residual.len() {
        for e in residual.entry(p).iter() {
            elems.push((p, e.clone()));
        }
    }
    // Union-find over m seed nodes (one per argument type) and one node per
    // residual element, connected through shared type variables.
    let total = m + elems.len();
    let mut parent: Vec<usize> = (0..total).collect();
    let mut var_nodes: BTreeMap<TyVar, Vec<usize>> = BTreeMap::new();
    for (i, t) in arg_types.iter().enumerate() {
        for v in t.type_vars() {
            var_nodes.entry(v).or_default().push(i);
        }
    }
    for (j, (_, e)) in elems.iter().enumerate() {
        for v in e.type_vars() {
            var_nodes.entry(v).or_default().push(m + j);
        }
    }
    for nodes in var_nodes.values() {
        for pair in nodes.windows(2) {
            union(&mut parent, pair[0], pair[1]);
        }
    }
    // Two argument types in one component is an ambiguity.
    let roots: Vec<usize> = (0..m).map(|i| find(&mut parent, i)).collect();
    for i in 1..m {
        if roots[..i].contains(&roots[i]) {
            return Err(NoPartition);
        }
    }
    let mut block_elems: Vec<Vec<(usize, Ty)>> = vec![Vec::new(); m];
    let mut leftover_elems: Vec<(usize, Ty)> = Vec::new();
    for (j, (p, e)) in elems.iter().enumerate() {
        let r = find(&mut parent, m + j);
        match roots.iter().position(|seed| *seed == r) {
            Some(i) => block_elems[i].push((*p, e.clone())),
            None => leftover_elems.push((*p, e.clone())),
        }
    }
    let blocks: Vec<Ctx> = block_elems.iter().map(|es| ctx_from_elems(es)).collect();
    let leftover = ctx_from_elems(&leftover_elems);
    // The blocks and the leftover reassemble the residual exactly.
    debug_assert_eq!(
        blocks
            .iter()
            .fold(leftover.clone(), |acc, b| acc.and(b))
            .trim_trailing_omega(),
        residual.trim_trailing_omega(),
        "partition must preserve the residual"
    );
    Ok(ArgPartition { blocks, leftover })
}

fn ctx_from_elems(elems: &[(usize, Ty)]) -> Ctx {
    let len = elems.iter().map(|(p, _)| *p).max().unwrap_or(0);
    let mut entries = vec![Vec::new(); len];
    for (p, e) in elems {
        entries[p - 1].push(e.clone());
    }
    Ctx::new(entries.into_iter().map(Inter::from_elems).collect())
}

fn find(parent: &mut Vec<usize>, x: usize) -> usize {
    if parent[x] != x {
        let root = find(parent, parent[x]);
        parent[x] = root;
    }
    parent[x]
}

fn union(parent: &mut Vec<usize>, a: usize, b: usize) {
    let ra = find(parent, a);
    let rb = find(parent, b);
    if ra != rb {
        parent[rb] = ra;
    }
}

// ---- principality ----

/// The recursive principality check. Completeness is required at every
/// level, which is what separates principal C-types from merely complete
/// ones: pushing a context entry onto the head can break minimal
/// closedness, and the variable clause needs the exact partition.
pub fn is_principal(t: &CType) -> Result<bool, HeadlessInput> {
    let head = t.head().ok_or(HeadlessInput)?;
    Ok(principal_gate(&t.context, head))
}

fn principal_gate(ctx: &Ctx, head: &Ty) -> bool {
    let Ok(ct) = CType::new(ctx.clone(), head.clone()) else {
        return false;
    };
    is_complete(&ct).expect("the C-type was built with a head") && principal_cases(ctx, head)
}

fn principal_cases(ctx: &Ctx, head: &Ty) -> bool {
    match head {
        Ty::Arrow(u, rest) => {
            if ctx.is_nil() && u.is_omega() {
                principal_gate(&Ctx::nil(), rest)
            } else {
                principal_gate(&ctx.push_front(u.clone()), rest)
            }
        }
        Ty::Var(alpha) => {
            // A lone variable at the last position of an otherwise-omega
            // context.
            let n = ctx.len();
            if n >= 1
                && ctx.entry(n).as_single() == Some(head)
                && (1..n).all(|i| ctx.entry(i).is_omega())
            {
                return true;
            }
            // Otherwise the context must split as
            // (omega^{n-1}.(phi_1 -> ... -> phi_m -> alpha).nil) /\ G_1 /\
            // ... /\ G_m with every (G_i => phi_i) principal.
            let fos = fo(*alpha, ctx);
            let [fo1] = fos.as_slice() else {
                return false;
            };
            let hs: Vec<&Ty> = fo1
                .entry
                .iter()
                .filter(|e| e.final_var() == *alpha)
                .collect();
            let [h] = hs.as_slice() else {
                return false;
            };
            let h = (*h).clone();
            let (lefts, _) = h.right_spine();
            let mut phis = Vec::with_capacity(lefts.len());
            for u in lefts {
                match u.as_single() {
                    Some(p) => phis.push(p.clone()),
                    None => return false,
                }
            }
            let head_part = Ctx::padded(fo1.position, Inter::single(h));
            let Some(residual) = ctx.minus(&head_part) else {
                return false;
            };
            let Ok(part) = argument_partition(&residual, &phis) else {
                return false;
            };
            if !part.leftover.is_nil() {
                return false;
            }
            // Exact cover: the head part and the blocks rebuild the context
            // with nothing missing and no trailing omegas unaccounted for.
            let rebuilt = part.blocks.iter().fold(head_part, |acc, b| acc.and(b));
            if &rebuilt != ctx {
                return false;
            }
            part.blocks
                .iter()
                .zip(&phis)
                .all(|(block, phi)| principal_gate(block, phi))
        }
    }
}

// ---- reconstruction ----

/// Why reconstruction failed.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum ReconError {
    /// The result variable has no final occurrence in the context.
    NoFo,
    /// The result variable has final occurrences at several positions.
    MultipleFo,
    /// The head variable occurs again outside its one final occurrence.
    HeadVarReoccurs,
    /// An argument block does not form a principal pair (or cannot even be
    /// carved out unambiguously).
    NonPrincipalArgument,
    /// A non-empty leftover context remains under an abstraction.
    LeftoverNonempty,
}

impl fmt::Display for ReconError {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let msg = match self {
            ReconError::NoFo => "the result variable has no final occurrence in the context",
            ReconError::MultipleFo => {
                "the result variable has final occurrences at several positions"
            }
            ReconError::HeadVarReoccurs => {
                "the head variable occurs again outside its final occurrence"
            }
            ReconError::NonPrincipalArgument => "an argument block is not a principal pair",
            ReconError::LeftoverNonempty => {
                "a non-empty leftover context remains under an abstraction"
            }
        };
        write!(f, "{msg}")
    }
}

/// Rebuild the beta-normal form whose inferred typing is `(g, t)`. Returns
/// the term together with the leftover context; on principal input the
/// leftover is nil and `infer` of the term gives back `(g, t)` up to
/// renaming. Arrow types pop their source back onto the context (the
/// omega-on-nil case pops nothing) and require the body to consume the
/// context completely; a variable type locates the head entry through its
/// unique final occurrence, splits the spine sources off, and reconstructs
/// every argument from its connectivity block.
pub fn recon(g: &Ctx, t: &Ty) -> Result<(Term, Ctx), ReconError> {
    match t {
        Ty::Arrow(u, rest) => {
            let inner = if g.is_nil() && u.is_omega() {
                Ctx::nil()
            } else {
                g.push_front(u.clone())
            };
            let (body, leftover) = recon(&inner, rest)?;
            if !leftover.is_nil() {
                return Err(ReconError::LeftoverNonempty);
            }
            Ok((Term::abs(body), Ctx::nil()))
        }
        Ty::Var(alpha) => {
            let fos = fo(*alpha, g);
            let fo1 = match fos.as_slice() {
                [] => return Err(ReconError::NoFo),
                [one] => one,
                _ => return Err(ReconError::MultipleFo),
            };
            let hs: Vec<&Ty> = fo1
                .entry
                .iter()
                .filter(|e| e.final_var() == *alpha)
                .collect();
            let [h] = hs.as_slice() else {
                // Two final occurrences inside one entry: whichever is taken
                // as the head element leaves the variable in the rest.
                return Err(ReconError::HeadVarReoccurs);
            };
            let h = (*h).clone();
            let head_part = Ctx::padded(fo1.position, Inter::single(h.clone()));
            let residual = g
                .minus(&head_part)
                .expect("the head element came from this entry");
            if residual.type_vars().contains(alpha) {
                return Err(ReconError::HeadVarReoccurs);
            }
            let (lefts, _) = h.right_spine();
            let mut phis = Vec::with_capacity(lefts.len());
            for u in lefts {
                match u.as_single() {
                    Some(p) => phis.push(p.clone()),
                    None => return Err(ReconError::NonPrincipalArgument),
                }
            }
            if phis.iter().any(|p| p.type_vars().contains(alpha)) {
                return Err(ReconError::HeadVarReoccurs);
            }
            let part =
                argument_partition(&residual, &phis).map_err(|_| ReconError::NonPrincipalArgument)?;
            let mut term = Term::Index(fo1.position as u32);
            for (block, phi) in part.blocks.iter().zip(&phis) {
                let principal = CType::new(block.clone(), phi.clone())
                    .ok()
                    .map(|ct| is_principal(&ct).expect("built with a head"))
                    .unwrap_or(false);
                if !principal {
                    return Err(ReconError::NonPrincipalArgument);
                }
                let (arg, sub_leftover) = recon(block, phi)?;
                debug_assert!(
                    sub_leftover.is_nil(),
                    "principal blocks reconstruct without leftover"
                );
                term = Term::app(term, arg);
            }
            Ok((term, part.leftover))
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::infer::infer;
    use crate::syntax::{parse_context, parse_term, parse_type};

    fn ctx(src: &str) -> Ctx {
        parse_context(src).unwrap()
    }

    fn ty(src: &str) -> Ty {
        parse_type(src).unwrap()
    }

    fn ctype(ctx_src: &str, head_src: &str) -> CType {
        CType::new(ctx(ctx_src), ty(head_src)).unwrap()
    }

    /// The complete-but-not-principal fixture: both context entries are
    /// single C-types whose variables interlock across the two argument
    /// sources of the head entry.
    fn example_comp() -> CType {
        ctype("(a1->(a2->a3)->a4).((a1->a4)->(a3->a2)->a0).nil", "a0")
    }

    #[test]
    fn grammar_classes() {
        let v = ty("a0");
        assert_eq!(grammar_class(&v), GrammarClass { t_c: true, t_nf: true });
        // A width-2 source is fine for T_NF but not for T_C.
        let nf_only = ty("(a0/\\a1)->a2");
        assert_eq!(
            grammar_class(&nf_only),
            GrammarClass { t_c: false, t_nf: true }
        );
        // Wrapping it as a single source gives T_C but loses T_NF.
        let c_only = ty("((a0/\\a1)->a2)->a3");
        assert_eq!(
            grammar_class(&c_only),
            GrammarClass { t_c: true, t_nf: false }
        );
        assert!(is_inter_c(&Inter::omega()));
    }

    #[test]
    fn ctype_construction_validates() {
        assert!(CType::new(ctx("a0.nil"), ty("a0")).is_ok());
        // Entry element with a width-2 source is not T_C.
        assert_eq!(
            CType::new(ctx("((a0/\\a1)->a2).nil"), ty("a3")),
            Err(CTypeError::ContextEntryNotUc(1))
        );
        assert_eq!(
            CType::headless(Ctx::nil()),
            Err(CTypeError::HeadlessNilContext)
        );
        assert!(CType::headless(ctx("a0.nil")).is_ok());
    }

    #[test]
    fn left_subtypes_examples() {
        assert_eq!(
            left_subtypes(&ctype("w.w.a0.nil", "a0")),
            [Inter::single(ty("a0"))].into_iter().collect()
        );
        assert!(left_subtypes(&CType::new(Ctx::nil(), ty("a0")).unwrap()).is_empty());
        // Context entries and head spine sources both contribute.
        let t = ctype("a0.nil", "(a1->a1)->a2->a3");
        let expected: BTreeSet<Inter> = [
            Inter::single(ty("a0")),
            Inter::single(ty("a1->a1")),
            Inter::single(ty("a2")),
        ]
        .into_iter()
        .collect();
        assert_eq!(left_subtypes(&t), expected);
    }

    #[test]
    fn polarity_counts_with_flips() {
        let t = ctype("a0.nil", "a0");
        assert_eq!(polarity(&t, TyVar(0)), Polarity { positive: 1, negative: 1 });
        // In (a0->a1).nil => a0: the source a0 flips back to positive.
        let t = ctype("(a0->a1).nil", "a0");
        assert_eq!(polarity(&t, TyVar(0)), Polarity { positive: 2, negative: 0 });
        assert_eq!(polarity(&t, TyVar(1)), Polarity { positive: 0, negative: 1 });
        assert_eq!(polarity(&t, TyVar(9)), Polarity::default());
    }

    #[test]
    fn closedness_examples() {
        assert!(is_closed(&ctype("w.w.a0.nil", "a0")));
        assert!(!is_closed(&CType::new(Ctx::nil(), ty("a0")).unwrap()));
        assert!(is_closed(&example_comp()));
    }

    #[test]
    fn finally_closed_examples() {
        assert!(is_finally_closed(&ctype("w.a0.nil", "a0")).unwrap());
        assert!(is_finally_closed(&ctype("a0.nil", "a1->a0")).unwrap());
        // The entry's final occurrence is a1, not the head's a0.
        assert!(!is_finally_closed(&ctype("(a0->a1).nil", "a0")).unwrap());
        assert_eq!(
            is_finally_closed(&CType::headless(ctx("a0.nil")).unwrap()),
            Err(HeadlessInput)
        );
    }

    #[test]
    fn held_decompositions_examples() {
        // One non-omega entry: itself (headed) and the headless twin.
        let t = ctype("a0.nil", "a0");
        let held = held_decompositions(&t).unwrap();
        assert_eq!(
            held,
            vec![
                CType::headless(ctx("a0.nil")).unwrap(),
                t.clone(),
            ]
        );
        // A nil context yields only the C-type itself.
        let t = CType::new(Ctx::nil(), ty("a0->a0")).unwrap();
        assert_eq!(held_decompositions(&t).unwrap(), vec![t]);
    }

    #[test]
    fn minimally_closed_and_complete() {
        assert!(is_minimally_closed(&ctype("w.a0.nil", "a0")).unwrap());
        assert!(is_complete(&ctype("w.a0.nil", "a0")).unwrap());
        assert!(is_complete(&example_comp()).unwrap());
        // Unused closed entry: held (a0->a0).nil => is closed on its own.
        let t = ctype("(a0->a0).a1.nil", "a1");
        assert!(!is_minimally_closed(&t).unwrap());
    }

    #[test]
    fn example_mc_push_breaks_minimal_closedness() {
        // Start from the complete inferred typing of the running example and
        // prefix a fresh identity source to the head.
        let base = infer(&parse_term("2 (\\. 1) 1 \\. (1 1)").unwrap()).unwrap();
        let with_arrow = CType::new(
            base.ctx.clone(),
            Ty::arrow(Inter::single(ty("a9->a9")), base.ty.clone()),
        )
        .unwrap();
        assert!(is_complete(&with_arrow).unwrap());
        let pushed = CType::new(
            base.ctx.push_front(Inter::single(ty("a9->a9"))),
            base.ty.clone(),
        )
        .unwrap();
        assert!(!is_minimally_closed(&pushed).unwrap());
        assert!(!is_principal(&with_arrow).unwrap());
    }

    #[test]
    fn fo_examples() {
        assert_eq!(
            fo(TyVar(0), &ctx("w.w.a0.nil")),
            vec![FoEntry {
                position: 3,
                entry: Inter::single(ty("a0"))
            }]
        );
        assert!(fo(TyVar(0), &Ctx::nil()).is_empty());
        // Final occurrences only: a0 inside a source does not count.
        assert!(fo(TyVar(0), &ctx("(a0->a1).nil")).is_empty());
    }

    #[test]
    fn argument_partition_examples() {
        // Running example: residual a1 connects to the second argument type.
        let residual = ctx("a1.w.nil");
        let args = [ty("a0->a0"), ty("a1"), ty("(a2/\\(a2->a3))->a3")];
        let part = argument_partition(&residual, &args).unwrap();
        assert_eq!(part.blocks, vec![Ctx::nil(), ctx("a1.nil"), Ctx::nil()]);
        assert!(part.leftover.is_nil());
        // Example-comp: the lone residual element touches both argument
        // types.
        let residual = ctx("(a1->(a2->a3)->a4).w.nil");
        let args = [ty("a1->a4"), ty("a3->a2")];
        assert_eq!(argument_partition(&residual, &args), Err(NoPartition));
        // A single argument takes the whole connected residual.
        let part = argument_partition(&ctx("a0.nil"), &[ty("a0")]).unwrap();
        assert_eq!(part.blocks, vec![ctx("a0.nil")]);
        // Unconnected elements land in the leftover.
        let part = argument_partition(&ctx("a5.nil"), &[ty("a0")]).unwrap();
        assert_eq!(part.blocks, vec![Ctx::nil()]);
        assert_eq!(part.leftover, ctx("a5.nil"));
    }

    #[test]
    fn principal_examples() {
        assert!(is_principal(&ctype("w.w.a0.nil", "a0")).unwrap());
        assert!(is_principal(&ctype("(a0/\\(a0->a1)).nil", "a1")).unwrap());
        // Complete but not principal: the partition is ambiguous.
        assert!(!is_principal(&example_comp()).unwrap());
        // A trailing omega is not the typing of any term.
        assert!(!is_principal(&ctype("a0.w.nil", "a0")).unwrap());
    }

    #[test]
    fn recon_round_trips_the_running_example() {
        let n = parse_term("2 (\\. 1) 1 \\. (1 1)").unwrap();
        let t = infer(&n).unwrap();
        let ct = CType::from_typing(&t).unwrap();
        assert!(is_principal(&ct).unwrap());
        let (rebuilt, leftover) = recon(&t.ctx, &t.ty).unwrap();
        assert_eq!(rebuilt, n);
        assert!(leftover.is_nil());
    }

    #[test]
    fn recon_failure_cases() {
        assert_eq!(recon(&Ctx::nil(), &ty("a0")), Err(ReconError::NoFo));
        assert_eq!(
            recon(&ctx("a0.a0.nil"), &ty("a0")),
            Err(ReconError::MultipleFo)
        );
        // Two final occurrences inside one entry.
        assert_eq!(
            recon(&ctx("(a0/\\(a1->a0)).nil"), &ty("a0")),
            Err(ReconError::HeadVarReoccurs)
        );
        // The head variable occurs again inside another entry.
        assert_eq!(
            recon(&ctx("a0.((a0->a1)->a2).nil"), &ty("a0")),
            Err(ReconError::HeadVarReoccurs)
        );
        let comp = example_comp();
        assert_eq!(
            recon(comp.context(), comp.head().unwrap()),
            Err(ReconError::NonPrincipalArgument)
        );
        // An entry the body never consumes.
        assert_eq!(
            recon(&ctx("a2.nil"), &ty("a0->a0")),
            Err(ReconError::LeftoverNonempty)
        );
    }

    #[test]
    fn recon_returns_the_leftover_at_the_top() {
        let (term, leftover) = recon(&ctx("a0.a5.nil"), &ty("a0")).unwrap();
        assert_eq!(term, Term::Index(1));
        assert_eq!(leftover, ctx("w.a5.nil"));
    }
}
