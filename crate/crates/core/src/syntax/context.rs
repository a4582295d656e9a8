use std::collections::BTreeSet;
use std::sync::Arc;

use super::{Name, Ty};

/// Ordered typing context. Extension returns a new context and shares the
/// prefix with the old one.
#[derive(Clone, Debug, Default)]
pub struct Context {
    last: Option<Arc<Entry>>,
    len: usize,
}

#[derive(Debug)]
struct Entry {
    name: Name,
    ty: Ty,
    prev: Option<Arc<Entry>>,
}

impl Context {
    pub fn new() -> Self {
        Self::default()
    }

    pub fn from_bindings<I, S>(bindings: I) -> Self
    where
        I: IntoIterator<Item = (S, Ty)>,
        S: Into<Name>,
    {
        bindings.into_iter().fold(Context::new(), |ctx, (x, ty)| ctx.extend(x.into(), ty))
    }

    pub fn extend(&self, name: Name, ty: Ty) -> Context {
        Context { last: Some(Arc::new(Entry { name, ty, prev: self.last.clone() })), len: self.len + 1 }
    }

    pub fn len(&self) -> usize {
        self.len
    }

    pub fn is_empty(&self) -> bool {
        self.len == 0
    }

    /// Innermost binding first.
    fn entries(&self) -> impl Iterator<Item = &Entry> {
        std::iter::successors(self.last.as_deref(), |e| e.prev.as_deref())
    }

    pub fn lookup(&self, x: &str) -> Option<&Ty> {
        self.entries().find(|e| &*e.name == x).map(|e| &e.ty)
    }

    pub fn contains(&self, x: &str) -> bool {
        self.lookup(x).is_some()
    }

    pub fn domain(&self) -> BTreeSet<Name> {
        self.entries().map(|e| e.name.clone()).collect()
    }

    /// Outermost binding first.
    pub fn bindings(&self) -> Vec<(Name, Ty)> {
        let mut out: Vec<_> = self.entries().map(|e| (e.name.clone(), e.ty.clone())).collect();
        out.reverse();
        out
    }

    /// `Γ Ok`: distinct names, and every binding's type mentions only
    /// variables bound strictly earlier.
    pub fn is_ok(&self) -> bool {
        self.first_violation().is_none()
    }

    /// The first binding (outermost first) that breaks `Γ Ok`.
    pub fn first_violation(&self) -> Option<(Name, String)> {
        let mut seen = BTreeSet::new();
        for (x, ty) in self.bindings() {
            if let Some(y) = ty.free_vars().into_iter().find(|y| !seen.contains(y)) {
                return Some((x, format!("type mentions `{y}`, which is not bound earlier")));
            }
            if !seen.insert(x.clone()) {
                return Some((x, "variable is bound twice".to_string()));
            }
        }
        None
    }
}
