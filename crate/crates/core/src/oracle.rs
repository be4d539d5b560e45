//! Brute-force enumerators and exhaustive sweeps: beta-normal forms by the
//! shape grammar, derivable typings by inverting the typing rules, small
//! C-types by their grammar, and a sweep driver that runs every module's
//! invariants over the enumerated space and reports violations verbatim.
//!
//! Everything here is deterministic and exhaustive within its budget; the
//! enumerators double as independent oracles for the inference and
//! reconstruction algorithms, so none of them may call `infer` or `recon`
//! to produce their output.

use crate::infer::{completeness_witness, infer};
use crate::principal::{
    is_closed, is_complete, is_finally_closed, is_inter_c, is_minimally_closed, is_principal,
    is_type_nf, recon, CType,
};
use crate::syntax::{parse_term, parse_typing, print_term, print_typing};
use crate::systems::{check_nf_typing, is_varr_shape, relevance_ok, Derivation, System};
use crate::term::{NfShape, NotNormal, Term};
use crate::ty::{Ctx, Inter, Ty, Typing};

/// Bounds for the exhaustive enumerators. Term sizes count AST nodes; type
/// sizes use `Ty::size`, applied to every intersection and result type in a
/// derivation; the width bound caps every intersection, context entries
/// included.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct EnumBudget {
    pub max_term_size: usize,
    pub max_free_index: u32,
    pub max_type_size: usize,
    pub max_intersection_width: usize,
}

impl Default for EnumBudget {
    fn default() -> EnumBudget {
        EnumBudget {
            max_term_size: 5,
            max_free_index: 2,
            max_type_size: 8,
            max_intersection_width: 2,
        }
    }
}

/// Type variables available to the typing enumerator; a small pool keeps the
/// space finite while matching stays instance-wise.
const VAR_POOL: u32 = 3;

/// Typing enumeration stops growing past this term size even when the term
/// budget is larger: the typing space grows much faster than the term space,
/// and completeness only needs desk-scale coverage.
const TYPING_SWEEP_TERM_CAP: usize = 5;

// ---- beta-normal-form enumeration ----

/// All beta-normal forms within the budget, generated by the shape grammar
/// (a variable, an abstraction of a normal form, or a variable applied to
/// normal arguments), in size-lexicographic order without duplicates. Index
/// values are capped at `max_free_index` at every depth, bound and free
/// alike, so free indices never exceed the cap.
pub fn enum_beta_nfs(b: &EnumBudget) -> Vec<Term> {
    let mut out = Vec::new();
    for size in 1..=b.max_term_size {
        out.extend(nfs_exact(size, b.max_free_index));
    }
    out
}

fn nfs_exact(size: usize, free: u32) -> Vec<Term> {
    let mut out = Vec::new();
    if size == 1 {
        out.extend((1..=free).map(Term::Index));
        return out;
    }
    out.extend(nfs_exact(size - 1, free).into_iter().map(Term::abs));
    // Spines cost one node for the head, one per application, plus the
    // argument sizes.
    for m in 1..size {
        let Some(arg_total) = size.checked_sub(1 + m) else {
            break;
        };
        if arg_total < m {
            break;
        }
        for sizes in compositions(arg_total, m) {
            let per_arg: Vec<Vec<Term>> = sizes.iter().map(|s| nfs_exact(*s, free)).collect();
            for k in 1..=free {
                for args in cartesian(&per_arg) {
                    let spine = args
                        .iter()
                        .fold(Term::Index(k), |acc, a| Term::app(acc, (*a).clone()));
                    out.push(spine);
                }
            }
        }
    }
    out
}

/// Ordered lists of `parts` positive integers summing to `total`.
fn compositions(total: usize, parts: usize) -> Vec<Vec<usize>> {
    if parts == 0 {
        return if total == 0 { vec![Vec::new()] } else { Vec::new() };
    }
    let mut out = Vec::new();
    for first in 1..=total.saturating_sub(parts - 1) {
        for mut rest in compositions(total - first, parts - 1) {
            rest.insert(0, first);
            out.push(rest);
        }
    }
    out
}

/// Every way to pick one element from each list.
fn cartesian<T>(lists: &[Vec<T>]) -> Vec<Vec<&T>> {
    let mut out = vec![Vec::new()];
    for list in lists {
        let mut next = Vec::with_capacity(out.len() * list.len());
        for prefix in &out {
            for item in list {
                let mut row = prefix.clone();
                row.push(item);
                next.push(row);
            }
        }
        out = next;
    }
    out
}

/// All terms (redexes included) of exactly `size`, the cross-check universe
/// for the normal-form enumerator.
#[cfg(test)]
fn all_terms_exact(size: usize, free: u32) -> Vec<Term> {
    let mut out = Vec::new();
    if size == 1 {
        out.extend((1..=free).map(Term::Index));
        return out;
    }
    out.extend(all_terms_exact(size - 1, free).into_iter().map(Term::abs));
    for fsize in 1..size - 1 {
        let asize = size - 1 - fsize;
        for f in all_terms_exact(fsize, free) {
            for a in all_terms_exact(asize, free) {
                out.push(Term::app(f.clone(), a));
            }
        }
    }
    out
}

// ---- type enumeration over the variable pool ----

/// Types of each exact size from 1 to `max_size` over the variable pool,
/// with every intersection bounded by `max_width`.
fn types_by_size(max_size: usize, max_width: usize) -> Vec<Vec<Ty>> {
    let mut types: Vec<Vec<Ty>> = vec![Vec::new(); max_size + 1];
    let mut inters: Vec<Vec<Inter>> = vec![Vec::new(); max_size + 1];
    for s in 1..=max_size {
        if s == 1 {
            types[1].extend((0..VAR_POOL).map(Ty::var));
        } else {
            let mut fresh = Vec::new();
            // Sources of size `left` pair with targets of size s-1-left.
            for (us, ts) in inters[1..s - 1].iter().zip(types[1..s - 1].iter().rev()) {
                for u in us {
                    for t in ts {
                        fresh.push(Ty::arrow(u.clone(), t.clone()));
                    }
                }
            }
            types[s] = fresh;
        }
        inters[s] = inters_exact(s, max_width, &types);
    }
    types
}

/// Intersections of exact `Inter::size` (omega counts as size 1) and width
/// at most `max_width`, as nondecreasing element multisets.
fn inters_exact(size: usize, max_width: usize, types: &[Vec<Ty>]) -> Vec<Inter> {
    let mut out = Vec::new();
    if size == 1 {
        out.push(Inter::omega());
    }
    let mut elems = Vec::new();
    multisets_of_size(size, max_width, types, 1, 0, &mut elems, &mut out);
    out
}

/// Collect multisets of total size `remaining`, elements drawn from
/// `types[s][i]` at or after the `(min_size, min_index)` cursor so each
/// multiset is produced once.
fn multisets_of_size(
    remaining: usize,
    width_left: usize,
    types: &[Vec<Ty>],
    min_size: usize,
    min_index: usize,
    elems: &mut Vec<Ty>,
    out: &mut Vec<Inter>,
) {
    if remaining == 0 {
        if !elems.is_empty() {
            out.push(Inter::from_elems(elems.clone()));
        }
        return;
    }
    if width_left == 0 {
        return;
    }
    for s in min_size..=remaining {
        let start = if s == min_size { min_index } else { 0 };
        for (i, t) in types[s].iter().enumerate().skip(start) {
            elems.push(t.clone());
            multisets_of_size(remaining - s, width_left - 1, types, s, i, elems, out);
            elems.pop();
        }
    }
}

// ---- typing enumeration by rule inversion ----

/// All typings of the beta-normal form `n` whose derivations stay within the
/// budget: every intersection and every premise type has size at most
/// `max_type_size`, width at most `max_intersection_width`, and variables
/// from the fixed pool. Produced by inverting the typing rules shape by
/// shape — variables take every admissible leaf type, abstractions pop the
/// context head into the type, spines choose premise typings per argument
/// and a result type — never by consulting `infer`.
pub fn enum_typings(n: &Term, b: &EnumBudget, sys: System) -> Result<Vec<Typing>, NotNormal> {
    n.classify_nf()?;
    Ok(TypeTable::new(b, sys).typings(n))
}

/// Type pools bucketed by exact size, built once per enumeration.
struct TypeTable<'a> {
    b: &'a EnumBudget,
    sys: System,
    /// All budget types of each exact size.
    by_size: Vec<Vec<Ty>>,
    /// The types a variable leaf may take in the chosen system.
    leaves_by_size: Vec<Vec<Ty>>,
}

/// One argument's contribution to a spine typing: the arrow source recording
/// its premise types, and the premise contexts to fold into the conclusion.
struct ArgChoice {
    source: Inter,
    contexts: Vec<Ctx>,
}

impl<'a> TypeTable<'a> {
    fn new(b: &'a EnumBudget, sys: System) -> TypeTable<'a> {
        let by_size = types_by_size(b.max_type_size, b.max_intersection_width);
        let leaves_by_size = by_size
            .iter()
            .map(|bucket| {
                bucket
                    .iter()
                    .filter(|t| sys == System::Sm || is_varr_shape(t))
                    .cloned()
                    .collect()
            })
            .collect();
        TypeTable {
            b,
            sys,
            by_size,
            leaves_by_size,
        }
    }

    fn typings(&self, n: &Term) -> Vec<Typing> {
        match n.classify_nf().expect("enumeration stays within normal forms") {
            NfShape::Var(k) => self
                .leaves_by_size
                .iter()
                .flatten()
                .map(|t| Typing::new(Ctx::padded(k as usize, Inter::single(t.clone())), t.clone()))
                .collect(),
            NfShape::Lam(_) => {
                let Term::Abs(body) = n else {
                    unreachable!("a Lam shape comes from an Abs term");
                };
                let mut out = Vec::new();
                for t in self.typings(body) {
                    let (source, ctx) = match t.ctx.split_front() {
                        Some((u, rest)) => (u, rest),
                        None => (Inter::omega(), Ctx::nil()),
                    };
                    let ty = Ty::arrow(source, t.ty);
                    if ty.size() <= self.b.max_type_size {
                        out.push(Typing::new(ctx, ty));
                    }
                }
                out
            }
            NfShape::Spine(k, args) => self.spine_typings(k, &args),
        }
    }

    fn spine_typings(&self, k: u32, args: &[Term]) -> Vec<Typing> {
        // The head spends one node per arrow and at least one on the result.
        let Some(source_budget) = self.b.max_type_size.checked_sub(args.len() + 1) else {
            return Vec::new();
        };
        let per_arg: Vec<Vec<ArgChoice>> = args
            .iter()
            .map(|a| {
                let mut choices = self.arg_choices(&self.typings(a));
                choices.sort_by_key(|c| c.source.size());
                choices
            })
            .collect();
        if per_arg.iter().any(Vec::is_empty) {
            return Vec::new();
        }
        let mut out = Vec::new();
        let mut selection = Vec::new();
        self.select_args(k, &per_arg, source_budget, &mut selection, &mut out);
        out.sort();
        out.dedup();
        out
    }

    /// Pick one choice per argument, pruning by the size left for the
    /// remaining sources (each needs at least one node).
    fn select_args<'c>(
        &self,
        k: u32,
        remaining: &'c [Vec<ArgChoice>],
        size_left: usize,
        selection: &mut Vec<&'c ArgChoice>,
        out: &mut Vec<Typing>,
    ) {
        let Some((choices, rest)) = remaining.split_first() else {
            self.finish_spine(k, selection, size_left, out);
            return;
        };
        for c in choices {
            if c.source.size() + rest.len() > size_left {
                break;
            }
            selection.push(c);
            self.select_args(k, rest, size_left - c.source.size(), selection, out);
            selection.pop();
        }
    }

    /// Close one source selection over every admissible result type.
    fn finish_spine(&self, k: u32, selection: &[&ArgChoice], size_left: usize, out: &mut Vec<Typing>) {
        let max_result = (size_left + 1).min(self.b.max_type_size);
        for s in 1..=max_result {
            // In the restricted system the head must be of variable-leaf
            // shape: the selection already keeps its sources singleton, so
            // only the result's own spine needs the restriction.
            let pool = match self.sys {
                System::Sm => &self.by_size[s],
                System::SmR => &self.leaves_by_size[s],
            };
            for result in pool {
                let head = selection
                    .iter()
                    .rev()
                    .fold(result.clone(), |acc, c| Ty::arrow(c.source.clone(), acc));
                debug_assert!(head.size() <= self.b.max_type_size);
                debug_assert!(self.sys == System::Sm || is_varr_shape(&head));
                let mut ctx = Ctx::padded(k as usize, Inter::single(head));
                for c in selection {
                    for premise_ctx in &c.contexts {
                        ctx = ctx.and(premise_ctx);
                    }
                }
                let within = (1..=ctx.len()).all(|i| {
                    let e = ctx.entry(i);
                    e.size() <= self.b.max_type_size
                        && e.width() <= self.b.max_intersection_width
                });
                if within {
                    out.push(Typing::new(ctx, result.clone()));
                }
            }
        }
    }

    /// The admissible premise selections for one argument. The restricted
    /// system forces singleton sources (one premise per argument); the
    /// unrestricted one adds the omega source with a single premise of any
    /// type, and intersections of up to `max_width` premise types with
    /// repetition.
    fn arg_choices(&self, arg_typings: &[Typing]) -> Vec<ArgChoice> {
        let mut out = Vec::new();
        match self.sys {
            System::SmR => {
                for t in arg_typings {
                    out.push(ArgChoice {
                        source: Inter::single(t.ty.clone()),
                        contexts: vec![t.ctx.clone()],
                    });
                }
            }
            System::Sm => {
                for t in arg_typings {
                    out.push(ArgChoice {
                        source: Inter::omega(),
                        contexts: vec![t.ctx.clone()],
                    });
                }
                let mut picked = Vec::new();
                self.premise_multisets(arg_typings, 0, &mut picked, &mut out);
            }
        }
        out
    }

    fn premise_multisets(
        &self,
        arg_typings: &[Typing],
        min_index: usize,
        picked: &mut Vec<usize>,
        out: &mut Vec<ArgChoice>,
    ) {
        if !picked.is_empty() {
            let source =
                Inter::from_elems(picked.iter().map(|i| arg_typings[*i].ty.clone()).collect());
            if source.size() <= self.b.max_type_size {
                out.push(ArgChoice {
                    source,
                    contexts: picked.iter().map(|i| arg_typings[*i].ctx.clone()).collect(),
                });
            }
        }
        if picked.len() == self.b.max_intersection_width {
            return;
        }
        for i in min_index..arg_typings.len() {
            picked.push(i);
            self.premise_multisets(arg_typings, i, picked, out);
            picked.pop();
        }
    }
}

// ---- C-type enumeration ----

/// All C-types whose context entries, head, and context length stay within
/// the given bounds, over the same variable pool as the typing enumerator.
/// Exhaustive and deterministic; the width bound for entries is 2.
pub fn enum_ctypes(max_entry_size: usize, max_head_size: usize, max_ctx_len: usize) -> Vec<CType> {
    let max_size = max_entry_size.max(max_head_size);
    let mut tc: Vec<Vec<Ty>> = vec![Vec::new(); max_size + 1];
    let mut tnf: Vec<Vec<Ty>> = vec![Vec::new(); max_size + 1];
    let mut uc: Vec<Vec<Inter>> = vec![Vec::new(); max_size + 1];
    for s in 1..=max_size {
        if s == 1 {
            tc[1].extend((0..VAR_POOL).map(Ty::var));
            tnf[1].extend((0..VAR_POOL).map(Ty::var));
        } else {
            let mut fresh_tc = Vec::new();
            let mut fresh_tnf = Vec::new();
            for left in 1..s - 1 {
                let right = s - 1 - left;
                for t1 in &tnf[left] {
                    for rest in &tc[right] {
                        fresh_tc.push(Ty::arrow1(t1.clone(), rest.clone()));
                    }
                }
                for u in &uc[left] {
                    for rest in &tnf[right] {
                        fresh_tnf.push(Ty::arrow(u.clone(), rest.clone()));
                    }
                }
            }
            tc[s] = fresh_tc;
            tnf[s] = fresh_tnf;
        }
        uc[s] = inters_exact(s, 2, &tc);
    }
    let entries: Vec<Inter> = uc
        .iter()
        .take(max_entry_size + 1)
        .flatten()
        .cloned()
        .collect();
    let heads: Vec<Ty> = tnf
        .iter()
        .take(max_head_size + 1)
        .flatten()
        .cloned()
        .collect();
    let mut contexts: Vec<Ctx> = vec![Ctx::nil()];
    let mut frontier: Vec<Ctx> = vec![Ctx::nil()];
    for _ in 0..max_ctx_len {
        let mut next = Vec::with_capacity(frontier.len() * entries.len());
        for c in &frontier {
            for e in &entries {
                next.push(c.push_front(e.clone()));
            }
        }
        contexts.extend(next.iter().cloned());
        frontier = next;
    }
    let mut out = Vec::with_capacity(contexts.len() * heads.len());
    for c in &contexts {
        for h in &heads {
            out.push(
                CType::new(c.clone(), h.clone())
                    .expect("grammar-driven enumeration yields valid C-types"),
            );
        }
    }
    out
}

// ---- sweeps ----

/// Outcome of a full sweep: counts plus the violations, each recorded as one
/// human-readable line quoting the offending term or typing verbatim.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SweepReport {
    pub num_nfs: usize,
    pub num_typings: usize,
    pub violations: Vec<String>,
}

impl SweepReport {
    pub fn is_clean(&self) -> bool {
        self.violations.is_empty()
    }
}

impl std::fmt::Display for SweepReport {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        writeln!(f, "normal forms checked: {}", self.num_nfs)?;
        writeln!(f, "enumerated typings checked: {}", self.num_typings)?;
        if self.is_clean() {
            write!(f, "violations: none")
        } else {
            write!(f, "violations: {}", self.violations.len())?;
            for v in &self.violations {
                write!(f, "\n  {v}")?;
            }
            Ok(())
        }
    }
}

/// Run every module's invariants over the enumerated normal forms: print and
/// parse round trips, soundness of inference in the restricted system with
/// the relevance invariant at every derivation node, grammar containment of
/// the inferred typing, the five characterisation predicates, the exact
/// reconstruction round trip, and — for terms up to the typing-sweep cap —
/// agreement of every enumerated typing with `check_nf_typing` plus a
/// substitution witness against the inferred typing.
pub fn sweep(b: &EnumBudget) -> SweepReport {
    let mut report = SweepReport {
        num_nfs: 0,
        num_typings: 0,
        violations: Vec::new(),
    };
    for n in enum_beta_nfs(b) {
        report.num_nfs += 1;
        check_one_nf(&n, b, &mut report);
    }
    report
}

fn check_one_nf(n: &Term, b: &EnumBudget, report: &mut SweepReport) {
    let printed = print_term(n);
    let mut fail = |what: String| report.violations.push(what);
    if !n.is_beta_nf() {
        fail(format!("enumeration produced a non-normal term: {printed}"));
        return;
    }
    if parse_term(&printed) != Ok(n.clone()) {
        fail(format!("term print/parse round trip broke on: {printed}"));
    }
    let t = match infer(n) {
        Ok(t) => t,
        Err(e) => {
            fail(format!("inference refused the normal form {printed}: {e}"));
            return;
        }
    };
    let typed = print_typing(&t);
    if parse_typing(&typed) != Ok(t.clone()) {
        fail(format!("typing print/parse round trip broke on: {typed}"));
    }
    match check_nf_typing(n, &t, System::SmR) {
        Ok(d) => {
            if !relevance_at_every_node(&d) {
                fail(format!(
                    "relevance fails inside the derivation of {printed} : {typed}"
                ));
            }
        }
        Err(e) => fail(format!("soundness fails for {printed} : {typed}: {e}")),
    }
    if !is_type_nf(&t.ty) || !t.ctx.entries().iter().all(is_inter_c) {
        fail(format!("inferred typing leaves the C grammar: {typed}"));
    }
    match CType::from_typing(&t) {
        Ok(ct) => {
            let all_hold = is_closed(&ct)
                && is_finally_closed(&ct).unwrap_or(false)
                && is_minimally_closed(&ct).unwrap_or(false)
                && is_complete(&ct).unwrap_or(false)
                && is_principal(&ct).unwrap_or(false);
            if !all_hold {
                fail(format!(
                    "characterisation predicates fail for {printed} : {typed}"
                ));
            }
        }
        Err(e) => fail(format!("inferred typing is not a C-type: {typed}: {e}")),
    }
    match recon(&t.ctx, &t.ty) {
        Ok((rebuilt, leftover)) => {
            if rebuilt != *n || !leftover.is_nil() {
                fail(format!(
                    "reconstruction of {typed} gave {} instead of {printed}",
                    print_term(&rebuilt)
                ));
            }
        }
        Err(e) => fail(format!("reconstruction fails for {printed} : {typed}: {e}")),
    }
    if n.size() <= b.max_term_size.min(TYPING_SWEEP_TERM_CAP) {
        let typings = enum_typings(n, b, System::SmR).expect("enumerated terms are normal");
        for candidate in typings {
            report.num_typings += 1;
            let shown = print_typing(&candidate);
            if let Err(e) = check_nf_typing(n, &candidate, System::SmR) {
                report.violations.push(format!(
                    "enumerated typing is not derivable for {printed} : {shown}: {e}"
                ));
                continue;
            }
            match completeness_witness(n, &candidate) {
                Ok(s) => {
                    if s.apply_typing(&t) != candidate {
                        report.violations.push(format!(
                            "witness does not reproduce {shown} from {typed}"
                        ));
                    }
                }
                Err(e) => report.violations.push(format!(
                    "no substitution witness for {printed} : {shown}: {e}"
                )),
            }
        }
    }
}

/// The relevance invariant at every node of a derivation: the context length
/// is the largest free index and entries are omega exactly off the free
/// indices.
pub fn relevance_at_every_node(d: &Derivation) -> bool {
    relevance_ok(&d.term, &d.typing.ctx) && d.premises.iter().all(relevance_at_every_node)
}

#[cfg(test)]
mod tests {
    use super::*;
    use std::collections::BTreeSet;

    fn budget(term: usize, free: u32) -> EnumBudget {
        EnumBudget {
            max_term_size: term,
            max_free_index: free,
            ..EnumBudget::default()
        }
    }

    #[test]
    fn smallest_budgets_enumerate_the_expected_terms() {
        assert_eq!(
            enum_beta_nfs(&budget(1, 2)),
            vec![Term::Index(1), Term::Index(2)]
        );
        assert_eq!(
            enum_beta_nfs(&budget(2, 1)),
            vec![Term::Index(1), Term::abs(Term::Index(1))]
        );
    }

    #[test]
    fn enumeration_matches_the_filter_cross_check() {
        for (size, free) in [(3, 2), (4, 2), (5, 1)] {
            let grammar: Vec<Term> = enum_beta_nfs(&budget(size, free));
            let mut filtered = Vec::new();
            for s in 1..=size {
                filtered.extend(
                    all_terms_exact(s, free)
                        .into_iter()
                        .filter(Term::is_beta_nf),
                );
            }
            let grammar_set: BTreeSet<&Term> = grammar.iter().collect();
            assert_eq!(grammar_set.len(), grammar.len(), "duplicates at {size}/{free}");
            let filtered_set: BTreeSet<&Term> = filtered.iter().collect();
            assert_eq!(grammar_set, filtered_set, "mismatch at {size}/{free}");
        }
    }

    #[test]
    fn pinned_normal_form_count() {
        // Frozen after the first computation; a change means the enumerator
        // or the budget semantics moved.
        assert_eq!(enum_beta_nfs(&EnumBudget::default()).len(), 50);
    }

    #[test]
    fn index_typings_are_exactly_the_admissible_leaves() {
        let small = EnumBudget {
            max_type_size: 3,
            ..EnumBudget::default()
        };
        let ts = enum_typings(&Term::Index(1), &small, System::SmR).unwrap();
        assert!(!ts.is_empty());
        for t in &ts {
            assert_eq!(t.ctx.entry(1), Inter::single(t.ty.clone()));
            assert_eq!(t.ctx.len(), 1);
            assert!(is_varr_shape(&t.ty));
            assert!(t.ty.size() <= 3);
        }
        // The unrestricted system admits more leaves (omega sources).
        let sm = enum_typings(&Term::Index(1), &small, System::Sm).unwrap();
        assert!(sm.len() > ts.len());
    }

    #[test]
    fn abstraction_typings_pop_the_context_head() {
        let small = EnumBudget {
            max_type_size: 5,
            ..EnumBudget::default()
        };
        let identity = Term::abs(Term::Index(1));
        let ts = enum_typings(&identity, &small, System::SmR).unwrap();
        assert!(!ts.is_empty());
        for t in &ts {
            assert!(t.ctx.is_nil());
            // Every typing of the identity is (sigma -> sigma).
            let Ty::Arrow(u, rest) = &t.ty else {
                panic!("identity typing must be an arrow: {}", print_typing(t));
            };
            assert_eq!(u.as_single(), Some(rest.as_ref()));
        }
    }

    #[test]
    fn enumerated_typings_check_and_witness() {
        let small = EnumBudget {
            max_type_size: 4,
            ..EnumBudget::default()
        };
        let spine = Term::app(Term::Index(1), Term::Index(1));
        for sys in [System::SmR, System::Sm] {
            let ts = enum_typings(&spine, &small, sys).unwrap();
            assert!(!ts.is_empty());
            for t in &ts {
                assert!(
                    check_nf_typing(&spine, t, sys).is_ok(),
                    "rejected: {}",
                    print_typing(t)
                );
            }
        }
        // In the restricted system every enumerated typing is an instance of
        // the inferred one.
        let inferred = infer(&spine).unwrap();
        for t in enum_typings(&spine, &small, System::SmR).unwrap() {
            let s = completeness_witness(&spine, &t).expect("witness exists");
            assert_eq!(s.apply_typing(&inferred), t);
        }
    }

    #[test]
    fn typing_enumeration_rejects_redexes() {
        let redex = Term::app(Term::abs(Term::Index(1)), Term::Index(1));
        assert!(enum_typings(&redex, &EnumBudget::default(), System::SmR).is_err());
    }

    #[test]
    fn ctype_enumeration_is_duplicate_free_and_grammatical() {
        let cts = enum_ctypes(2, 3, 1);
        let set: BTreeSet<&CType> = cts.iter().collect();
        assert_eq!(set.len(), cts.len());
        assert!(!cts.is_empty());
        for ct in &cts {
            assert!(ct.head().is_some());
            assert!(ct.context().len() <= 1);
        }
    }

    #[test]
    fn tiny_sweep_covers_exactly_the_single_index() {
        let report = sweep(&budget(1, 1));
        assert_eq!(report.num_nfs, 1);
        assert!(report.is_clean(), "{report}");
    }

    #[test]
    fn small_sweep_is_clean() {
        let report = sweep(&budget(4, 2));
        assert!(report.is_clean(), "{report}");
        assert!(report.num_typings > 0);
    }
}
