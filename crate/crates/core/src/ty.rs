//! Restricted intersection types, contexts and type substitutions.
//!
//! A type is a variable or an arrow whose left side is an intersection. An
//! intersection is a finite multiset of types: the empty multiset is omega,
//! and conjunction is multiset union, so commutativity and associativity with
//! omega as neutral element hold by construction. There is no idempotence:
//! `a /\ a` keeps both copies and differs from `a`.
//!
//! Contexts are 1-indexed lists of intersections, stored exactly as given
//! (no trailing-omega trimming). The pointwise conjunction of two contexts
//! pads the shorter one with omega.

use std::collections::{BTreeMap, BTreeSet};
use std::fmt;

/// A type variable, printed `a0`, `a1`, ...
#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct TyVar(pub u32);

/// A type: a variable or an arrow from an intersection to a type.
#[derive(Clone, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum Ty {
    Var(TyVar),
    Arrow(Inter, Box<Ty>),
}

/// An intersection of types kept as a canonically sorted multiset.
/// The empty multiset is omega.
#[derive(Clone, Debug, PartialEq, Eq, PartialOrd, Ord, Hash, Default)]
pub struct Inter(Vec<Ty>);

/// A typing context: intersections addressed by 1-based position.
#[derive(Clone, Debug, PartialEq, Eq, PartialOrd, Ord, Hash, Default)]
pub struct Ctx(Vec<Inter>);

/// A pair of a context and a type, the result of a typing judgement.
#[derive(Clone, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct Typing {
    pub ctx: Ctx,
    pub ty: Ty,
}

/// A finite-domain map from type variables to types. Identity entries are
/// pruned so the domain is exactly the set of variables moved by the map.
#[derive(Clone, Debug, PartialEq, Eq, Default)]
pub struct Subst(BTreeMap<TyVar, Ty>);

/// Error for `Subst::sum` when the two domains share a variable.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct DomainOverlap(pub TyVar);

impl fmt::Display for DomainOverlap {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "substitution domains overlap on a{}", self.0 .0)
    }
}

impl Ty {
    pub fn var(n: u32) -> Ty {
        Ty::Var(TyVar(n))
    }

    pub fn arrow(left: Inter, right: Ty) -> Ty {
        Ty::Arrow(left, Box::new(right))
    }

    /// Arrow with a single type on the left.
    pub fn arrow1(left: Ty, right: Ty) -> Ty {
        Ty::Arrow(Inter::single(left), Box::new(right))
    }

    pub fn size(&self) -> usize {
        match self {
            Ty::Var(_) => 1,
            Ty::Arrow(u, t) => 1 + u.size() + t.size(),
        }
    }

    /// The variable at the end of the right spine; total because every type
    /// ends in a variable.
    pub fn final_var(&self) -> TyVar {
        match self {
            Ty::Var(v) => *v,
            Ty::Arrow(_, t) => t.final_var(),
        }
    }

    /// Split off exactly `m` arrows: `u1 -> ... -> um -> rest` yields the
    /// left sides and the rest, `None` if the spine is shorter than `m`.
    pub fn strip_arrows(&self, m: usize) -> Option<(Vec<&Inter>, &Ty)> {
        let mut lefts = Vec::with_capacity(m);
        let mut current = self;
        for _ in 0..m {
            match current {
                Ty::Arrow(u, t) => {
                    lefts.push(u);
                    current = t;
                }
                Ty::Var(_) => return None,
            }
        }
        Some((lefts, current))
    }

    /// The full right spine: all arrow left sides in order and the final
    /// variable.
    pub fn right_spine(&self) -> (Vec<&Inter>, TyVar) {
        let mut lefts = Vec::new();
        let mut current = self;
        loop {
            match current {
                Ty::Var(v) => return (lefts, *v),
                Ty::Arrow(u, t) => {
                    lefts.push(u);
                    current = t;
                }
            }
        }
    }

    pub fn type_vars(&self) -> BTreeSet<TyVar> {
        let mut acc = BTreeSet::new();
        self.collect_vars(&mut acc);
        acc
    }

    fn collect_vars(&self, acc: &mut BTreeSet<TyVar>) {
        match self {
            Ty::Var(v) => {
                acc.insert(*v);
            }
            Ty::Arrow(u, t) => {
                for e in u.iter() {
                    e.collect_vars(acc);
                }
                t.collect_vars(acc);
            }
        }
    }
}

impl Inter {
    /// The empty intersection, omega.
    pub fn omega() -> Inter {
        Inter(Vec::new())
    }

    pub fn single(t: Ty) -> Inter {
        Inter(vec![t])
    }

    pub fn from_elems(mut elems: Vec<Ty>) -> Inter {
        elems.sort();
        Inter(elems)
    }

    pub fn is_omega(&self) -> bool {
        self.0.is_empty()
    }

    /// Multiset width: 0 for omega.
    pub fn width(&self) -> usize {
        self.0.len()
    }

    /// The only element of a width-1 intersection.
    pub fn as_single(&self) -> Option<&Ty> {
        match self.0.as_slice() {
            [t] => Some(t),
            _ => None,
        }
    }

    pub fn iter(&self) -> impl Iterator<Item = &Ty> {
        self.0.iter()
    }

    /// Multiset union; the canonical sorted order is restored.
    pub fn and(&self, other: &Inter) -> Inter {
        let mut elems = self.0.clone();
        elems.extend(other.0.iter().cloned());
        Inter::from_elems(elems)
    }

    pub fn size(&self) -> usize {
        if self.is_omega() {
            1
        } else {
            self.0.iter().map(Ty::size).sum()
        }
    }

    /// Remove one copy of `t`, `None` if it does not occur.
    pub fn minus_one(&self, t: &Ty) -> Option<Inter> {
        let pos = self.0.iter().position(|e| e == t)?;
        let mut elems = self.0.clone();
        elems.remove(pos);
        Some(Inter(elems))
    }

    /// True iff `self` is a sub-multiset of `other`.
    pub fn sub_multiset_of(&self, other: &Inter) -> bool {
        let mut rest = other.0.clone();
        for e in &self.0 {
            match rest.iter().position(|x| x == e) {
                Some(i) => {
                    rest.remove(i);
                }
                None => return false,
            }
        }
        true
    }

    /// Multiset difference `self - other`; `None` if `other` is not a
    /// sub-multiset of `self`.
    pub fn minus(&self, other: &Inter) -> Option<Inter> {
        let mut rest = self.clone();
        for e in &other.0 {
            rest = rest.minus_one(e)?;
        }
        Some(rest)
    }

    pub fn type_vars(&self) -> BTreeSet<TyVar> {
        let mut acc = BTreeSet::new();
        for e in self.iter() {
            e.collect_vars(&mut acc);
        }
        acc
    }
}

impl FromIterator<Ty> for Inter {
    fn from_iter<I: IntoIterator<Item = Ty>>(iter: I) -> Inter {
        Inter::from_elems(iter.into_iter().collect())
    }
}

// The empty test is `is_nil`, matching the written form of contexts.
#[allow(clippy::len_without_is_empty)]
impl Ctx {
    pub fn nil() -> Ctx {
        Ctx(Vec::new())
    }

    pub fn new(entries: Vec<Inter>) -> Ctx {
        Ctx(entries)
    }

    /// Context with omegas at positions 1..n-1 and `u` at position n.
    pub fn padded(n: usize, u: Inter) -> Ctx {
        assert!(n >= 1);
        let mut entries = vec![Inter::omega(); n - 1];
        entries.push(u);
        Ctx(entries)
    }

    pub fn len(&self) -> usize {
        self.0.len()
    }

    pub fn is_nil(&self) -> bool {
        self.0.is_empty()
    }

    /// Entry at 1-based position `i`; omega beyond the stored length.
    pub fn entry(&self, i: usize) -> Inter {
        assert!(i >= 1);
        self.0.get(i - 1).cloned().unwrap_or_else(Inter::omega)
    }

    pub fn entries(&self) -> &[Inter] {
        &self.0
    }

    /// Prepend an entry, shifting every stored position up by one.
    pub fn push_front(&self, u: Inter) -> Ctx {
        let mut entries = Vec::with_capacity(self.0.len() + 1);
        entries.push(u);
        entries.extend(self.0.iter().cloned());
        Ctx(entries)
    }

    /// Split the context into its first entry and the rest; `None` on nil.
    pub fn split_front(&self) -> Option<(Inter, Ctx)> {
        let (head, rest) = self.0.split_first()?;
        Some((head.clone(), Ctx(rest.to_vec())))
    }

    /// Pointwise conjunction; the shorter context is padded with omega, so
    /// the result has the longer length and nil is neutral.
    pub fn and(&self, other: &Ctx) -> Ctx {
        let len = self.0.len().max(other.0.len());
        let entries = (1..=len)
            .map(|i| self.entry(i).and(&other.entry(i)))
            .collect();
        Ctx(entries)
    }

    /// True iff every entry is omega (nil counts).
    pub fn is_all_omega(&self) -> bool {
        self.0.iter().all(Inter::is_omega)
    }

    /// Drop trailing omega entries.
    pub fn trim_trailing_omega(&self) -> Ctx {
        let mut entries = self.0.clone();
        while entries.last().is_some_and(Inter::is_omega) {
            entries.pop();
        }
        Ctx(entries)
    }

    /// Positionwise multiset difference `self - other`; `None` if some
    /// position of `other` is not a sub-multiset of the same position here.
    pub fn minus(&self, other: &Ctx) -> Option<Ctx> {
        if other.0.len() > self.0.len() && !other.trim_trailing_omega().0.len().le(&self.0.len()) {
            return None;
        }
        let len = self.0.len().max(other.0.len());
        let mut entries = Vec::with_capacity(len);
        for i in 1..=len {
            entries.push(self.entry(i).minus(&other.entry(i))?);
        }
        Some(Ctx(entries))
    }

    pub fn type_vars(&self) -> BTreeSet<TyVar> {
        let mut acc = BTreeSet::new();
        for u in &self.0 {
            for e in u.iter() {
                e.collect_vars(&mut acc);
            }
        }
        acc
    }
}

impl Typing {
    pub fn new(ctx: Ctx, ty: Ty) -> Typing {
        Typing { ctx, ty }
    }

    pub fn type_vars(&self) -> BTreeSet<TyVar> {
        let mut acc = self.ctx.type_vars();
        acc.extend(self.ty.type_vars());
        acc
    }
}

impl Subst {
    pub fn empty() -> Subst {
        Subst(BTreeMap::new())
    }

    /// Single-variable substitution `[v / t]`.
    pub fn bind(v: TyVar, t: Ty) -> Subst {
        let mut s = Subst::empty();
        s.insert(v, t);
        s
    }

    /// Insert a binding, pruning identities so `dom` stays exact.
    pub fn insert(&mut self, v: TyVar, t: Ty) {
        if t == Ty::Var(v) {
            self.0.remove(&v);
        } else {
            self.0.insert(v, t);
        }
    }

    pub fn get(&self, v: TyVar) -> Option<&Ty> {
        self.0.get(&v)
    }

    pub fn dom(&self) -> BTreeSet<TyVar> {
        self.0.keys().copied().collect()
    }

    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }

    /// Union of two substitutions with disjoint domains.
    pub fn sum(&self, other: &Subst) -> Result<Subst, DomainOverlap> {
        let mut out = self.clone();
        for (v, t) in &other.0 {
            if out.0.contains_key(v) {
                return Err(DomainOverlap(*v));
            }
            out.0.insert(*v, t.clone());
        }
        Ok(out)
    }

    pub fn apply_ty(&self, t: &Ty) -> Ty {
        match t {
            Ty::Var(v) => self.0.get(v).cloned().unwrap_or(Ty::Var(*v)),
            Ty::Arrow(u, rest) => Ty::arrow(self.apply_inter(u), self.apply_ty(rest)),
        }
    }

    /// Elementwise application; the width is preserved (no idempotence), the
    /// canonical order is restored.
    pub fn apply_inter(&self, u: &Inter) -> Inter {
        u.iter().map(|e| self.apply_ty(e)).collect()
    }

    pub fn apply_ctx(&self, ctx: &Ctx) -> Ctx {
        Ctx(ctx.entries().iter().map(|u| self.apply_inter(u)).collect())
    }

    pub fn apply_typing(&self, t: &Typing) -> Typing {
        Typing::new(self.apply_ctx(&t.ctx), self.apply_ty(&t.ty))
    }
}

/// First-order matching: find a substitution on the pattern's variables that
/// sends the pattern typing onto the target. Multiset members are paired by
/// backtracking over every consistent bijection; all partial solutions are
/// materialized, which is fine at the sizes handled here.
pub(crate) fn match_typing(pattern: &Typing, target: &Typing) -> Option<Subst> {
    if pattern.ctx.len() != target.ctx.len() {
        return None;
    }
    let mut sols = ty_matches(&pattern.ty, &target.ty, BTreeMap::new());
    for i in 1..=pattern.ctx.len() {
        if sols.is_empty() {
            return None;
        }
        sols = sols
            .into_iter()
            .flat_map(|s| inter_matches(&pattern.ctx.entry(i), &target.ctx.entry(i), s))
            .collect();
    }
    sols.into_iter().next().map(subst_from_map)
}

/// First-order matching of contexts alone, position by position.
pub(crate) fn match_ctx(pattern: &Ctx, target: &Ctx) -> Option<Subst> {
    if pattern.len() != target.len() {
        return None;
    }
    let mut sols = vec![BTreeMap::new()];
    for i in 1..=pattern.len() {
        sols = sols
            .into_iter()
            .flat_map(|s| inter_matches(&pattern.entry(i), &target.entry(i), s))
            .collect();
        if sols.is_empty() {
            return None;
        }
    }
    sols.into_iter().next().map(subst_from_map)
}

fn subst_from_map(m: BTreeMap<TyVar, Ty>) -> Subst {
    let mut s = Subst::empty();
    for (v, t) in m {
        s.insert(v, t);
    }
    s
}

fn ty_matches(pattern: &Ty, target: &Ty, s: BTreeMap<TyVar, Ty>) -> Vec<BTreeMap<TyVar, Ty>> {
    match pattern {
        Ty::Var(v) => match s.get(v) {
            Some(bound) => {
                if bound == target {
                    vec![s]
                } else {
                    Vec::new()
                }
            }
            None => {
                let mut s = s;
                s.insert(*v, target.clone());
                vec![s]
            }
        },
        Ty::Arrow(pu, pt) => match target {
            Ty::Arrow(tu, tt) => inter_matches(pu, tu, s)
                .into_iter()
                .flat_map(|s| ty_matches(pt, tt, s))
                .collect(),
            Ty::Var(_) => Vec::new(),
        },
    }
}

fn inter_matches(
    pattern: &Inter,
    target: &Inter,
    s: BTreeMap<TyVar, Ty>,
) -> Vec<BTreeMap<TyVar, Ty>> {
    if pattern.width() != target.width() {
        return Vec::new();
    }
    let ps: Vec<&Ty> = pattern.iter().collect();
    let ts: Vec<&Ty> = target.iter().collect();
    multiset_matches(&ps, &ts, s)
}

fn multiset_matches(ps: &[&Ty], ts: &[&Ty], s: BTreeMap<TyVar, Ty>) -> Vec<BTreeMap<TyVar, Ty>> {
    let Some((p, ps_rest)) = ps.split_first() else {
        return vec![s];
    };
    let mut out = Vec::new();
    for (j, t) in ts.iter().enumerate() {
        let mut ts_rest = ts.to_vec();
        ts_rest.remove(j);
        for s2 in ty_matches(p, t, s.clone()) {
            out.extend(multiset_matches(ps_rest, &ts_rest, s2));
        }
    }
    out
}

/// True iff some bijective renaming of type variables maps `a` onto `b`.
/// Multiset elements are matched by backtracking, so reorderings caused by
/// the renaming do not matter.
pub fn typing_alpha_equiv(a: &Typing, b: &Typing) -> bool {
    let mut fwd = BTreeMap::new();
    let mut rev = BTreeMap::new();
    if a.ctx.len() != b.ctx.len() {
        return false;
    }
    alpha_ty(&a.ty, &b.ty, &mut fwd, &mut rev)
        && (1..=a.ctx.len()).all(|i| alpha_inter(&a.ctx.entry(i), &b.ctx.entry(i), &mut fwd, &mut rev))
}

fn alpha_ty(
    a: &Ty,
    b: &Ty,
    fwd: &mut BTreeMap<TyVar, TyVar>,
    rev: &mut BTreeMap<TyVar, TyVar>,
) -> bool {
    match (a, b) {
        (Ty::Var(x), Ty::Var(y)) => match (fwd.get(x), rev.get(y)) {
            (Some(fy), Some(rx)) => fy == y && rx == x,
            (None, None) => {
                fwd.insert(*x, *y);
                rev.insert(*y, *x);
                true
            }
            _ => false,
        },
        (Ty::Arrow(u1, t1), Ty::Arrow(u2, t2)) => {
            alpha_inter(u1, u2, fwd, rev) && alpha_ty(t1, t2, fwd, rev)
        }
        _ => false,
    }
}

fn alpha_inter(
    a: &Inter,
    b: &Inter,
    fwd: &mut BTreeMap<TyVar, TyVar>,
    rev: &mut BTreeMap<TyVar, TyVar>,
) -> bool {
    if a.width() != b.width() {
        return false;
    }
    let xs: Vec<&Ty> = a.iter().collect();
    let ys: Vec<&Ty> = b.iter().collect();
    alpha_multiset(&xs, &ys, fwd, rev)
}

/// Match the first pattern element against every remaining candidate,
/// backtracking by restoring snapshots of the two binding maps.
fn alpha_multiset(
    xs: &[&Ty],
    ys: &[&Ty],
    fwd: &mut BTreeMap<TyVar, TyVar>,
    rev: &mut BTreeMap<TyVar, TyVar>,
) -> bool {
    let Some((x, xs_rest)) = xs.split_first() else {
        return ys.is_empty();
    };
    for (j, y) in ys.iter().enumerate() {
        let fwd_snap = fwd.clone();
        let rev_snap = rev.clone();
        if alpha_ty(x, y, fwd, rev) {
            let mut ys_rest = ys.to_vec();
            ys_rest.remove(j);
            if alpha_multiset(xs_rest, &ys_rest, fwd, rev) {
                return true;
            }
        }
        *fwd = fwd_snap;
        *rev = rev_snap;
    }
    false
}

/// Rename the variables of a typing to `a0, a1, ...` in first-seen order,
/// visiting the type first and then the context positions in order.
pub fn canonical_renaming(t: &Typing) -> Typing {
    let mut order = Vec::new();
    let mut seen = BTreeSet::new();
    first_seen_ty(&t.ty, &mut order, &mut seen);
    for u in t.ctx.entries() {
        for e in u.iter() {
            first_seen_ty(e, &mut order, &mut seen);
        }
    }
    let mut s = Subst::empty();
    for (i, v) in order.iter().enumerate() {
        s.insert(*v, Ty::var(i as u32));
    }
    s.apply_typing(t)
}

fn first_seen_ty(t: &Ty, order: &mut Vec<TyVar>, seen: &mut BTreeSet<TyVar>) {
    match t {
        Ty::Var(v) => {
            if seen.insert(*v) {
                order.push(*v);
            }
        }
        Ty::Arrow(u, rest) => {
            for e in u.iter() {
                first_seen_ty(e, order, seen);
            }
            first_seen_ty(rest, order, seen);
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn a(n: u32) -> Ty {
        Ty::var(n)
    }

    #[test]
    fn omega_is_neutral_for_and() {
        let t = Inter::single(Ty::arrow1(a(0), a(0)));
        assert_eq!(Inter::omega().and(&t), t);
        assert_eq!(t.and(&Inter::omega()), t);
    }

    #[test]
    fn and_is_commutative_and_keeps_duplicates() {
        let ab = Inter::from_elems(vec![a(0), a(1)]);
        let just_a = Inter::single(a(0));
        let sum = ab.and(&just_a);
        // a /\ a /\ b: three elements, duplicates kept.
        assert_eq!(sum.width(), 3);
        assert_eq!(sum, just_a.and(&ab));
        assert_ne!(just_a.and(&just_a), just_a);
    }

    #[test]
    fn ctx_and_pads_with_omega() {
        let tau = Ty::arrow1(a(1), a(1));
        let left = Ctx::new(vec![Inter::omega(), Inter::single(tau.clone())]);
        let right = Ctx::new(vec![Inter::single(a(0))]);
        let sum = left.and(&right);
        assert_eq!(
            sum,
            Ctx::new(vec![Inter::single(a(0)), Inter::single(tau)])
        );
        // nil is neutral.
        assert_eq!(left.and(&Ctx::nil()), left);
    }

    #[test]
    fn subst_applies_to_every_occurrence() {
        // [a0 / a1 -> a2] on (a0 /\ a3) -> a0.
        let s = Subst::bind(TyVar(0), Ty::arrow1(a(1), a(2)));
        let t = Ty::arrow(Inter::from_elems(vec![a(0), a(3)]), a(0));
        let expected = Ty::arrow(
            Inter::from_elems(vec![Ty::arrow1(a(1), a(2)), a(3)]),
            Ty::arrow1(a(1), a(2)),
        );
        assert_eq!(s.apply_ty(&t), expected);
    }

    #[test]
    fn subst_preserves_width() {
        let s = Subst::bind(TyVar(0), a(1));
        let u = Inter::from_elems(vec![a(0), a(1)]);
        // Both elements map to a1; the multiset keeps width 2.
        assert_eq!(s.apply_inter(&u).width(), 2);
    }

    #[test]
    fn subst_domain_is_exact() {
        let mut s = Subst::bind(TyVar(0), a(1));
        s.insert(TyVar(2), a(2)); // identity, pruned
        assert_eq!(s.dom(), [TyVar(0)].into_iter().collect());
    }

    #[test]
    fn subst_sum_requires_disjoint_domains() {
        let s1 = Subst::bind(TyVar(0), a(1));
        let s2 = Subst::bind(TyVar(2), a(3));
        let sum = s1.sum(&s2).unwrap();
        assert_eq!(sum.dom(), [TyVar(0), TyVar(2)].into_iter().collect());
        assert_eq!(s1.sum(&s1), Err(DomainOverlap(TyVar(0))));
    }

    #[test]
    fn type_vars_collects_all() {
        let t = Ty::arrow(Inter::from_elems(vec![a(0), a(1)]), a(2));
        assert_eq!(
            t.type_vars(),
            [TyVar(0), TyVar(1), TyVar(2)].into_iter().collect()
        );
    }

    #[test]
    fn alpha_equiv_accepts_renaming() {
        let t1 = Typing::new(Ctx::new(vec![Inter::single(a(0))]), a(0));
        let t2 = Typing::new(Ctx::new(vec![Inter::single(a(7))]), a(7));
        assert!(typing_alpha_equiv(&t1, &t2));
    }

    #[test]
    fn alpha_equiv_requires_bijection() {
        let t1 = Typing::new(Ctx::new(vec![Inter::single(a(0))]), a(0));
        let t2 = Typing::new(Ctx::new(vec![Inter::single(a(0))]), a(1));
        assert!(!typing_alpha_equiv(&t1, &t2));
        // Two distinct variables cannot collapse onto one.
        let t3 = Typing::new(Ctx::new(vec![Inter::from_elems(vec![a(0), a(1)])]), a(0));
        let t4 = Typing::new(Ctx::new(vec![Inter::from_elems(vec![a(2), a(2)])]), a(2));
        assert!(!typing_alpha_equiv(&t3, &t4));
    }

    #[test]
    fn alpha_equiv_matches_reordered_multisets() {
        // {a0, a1 -> a1} vs {a9 -> a9, a3}: same shape under renaming even
        // though the canonical element orders pair up differently.
        let u1 = Inter::from_elems(vec![a(0), Ty::arrow1(a(1), a(1))]);
        let u2 = Inter::from_elems(vec![Ty::arrow1(a(9), a(9)), a(3)]);
        let t1 = Typing::new(Ctx::new(vec![u1]), a(0));
        let t2 = Typing::new(Ctx::new(vec![u2]), a(3));
        assert!(typing_alpha_equiv(&t1, &t2));
    }

    #[test]
    fn canonical_renaming_visits_type_first() {
        let t = Typing::new(Ctx::new(vec![Inter::single(a(5))]), a(9));
        let r = canonical_renaming(&t);
        assert_eq!(r, Typing::new(Ctx::new(vec![Inter::single(a(1))]), a(0)));
    }

    #[test]
    fn matching_instantiates_pattern_variables() {
        // Pattern a0 -> a1 against (a2 -> a2) -> a3.
        let pattern = Typing::new(Ctx::nil(), Ty::arrow1(a(0), a(1)));
        let target = Typing::new(Ctx::nil(), Ty::arrow1(Ty::arrow1(a(2), a(2)), a(3)));
        let s = match_typing(&pattern, &target).unwrap();
        assert_eq!(s.apply_typing(&pattern), target);
        // The reverse direction has no match: a ground arrow cannot cover a0.
        assert!(match_typing(&target, &pattern).is_none());
    }

    #[test]
    fn matching_backtracks_across_multiset_pairings() {
        // The type part binds a0 to a2 -> a2 up front, so inside the context
        // entry the first pairing of a0 (with a3) fails and the matcher must
        // back off and pair it with a2 -> a2 instead.
        let pattern = Typing::new(Ctx::new(vec![Inter::from_elems(vec![a(0), a(1)])]), a(0));
        let id = Ty::arrow1(a(2), a(2));
        let target = Typing::new(
            Ctx::new(vec![Inter::from_elems(vec![a(3), id.clone()])]),
            id,
        );
        let s = match_typing(&pattern, &target).unwrap();
        assert_eq!(s.apply_typing(&pattern), target);
    }

    #[test]
    fn ctx_minus_is_positionwise() {
        let g = Ctx::new(vec![
            Inter::from_elems(vec![a(0), a(1)]),
            Inter::single(a(2)),
        ]);
        let d = Ctx::new(vec![Inter::single(a(0))]);
        let r = g.minus(&d).unwrap();
        assert_eq!(
            r,
            Ctx::new(vec![Inter::single(a(1)), Inter::single(a(2))])
        );
        assert_eq!(g.minus(&Ctx::new(vec![Inter::single(a(3))])), None);
    }
}
