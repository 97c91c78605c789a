//! Principal two-sided ideals, J-classes and the sets `I(a) = J(a) − J_a`.

use serde::Serialize;

use crate::table::{CayleyTable, ElemSet};

/// `J(a) = S¹aS¹`.
pub fn principal_ideal(table: &CayleyTable, a: usize) -> ElemSet {
    let mut out = ElemSet::new();
    out.insert(a);
    for x in table.elements() {
        let xa = table.mul(x, a);
        out.insert(xa);
        out.insert(table.mul(a, x));
        for y in table.elements() {
            out.insert(table.mul(xa, y));
        }
    }
    out
}

/// `J_a = {s : J(s) = J(a)}`.
pub fn j_class(table: &CayleyTable, a: usize) -> ElemSet {
    JStructure::new(table).j_class(a)
}

/// `I(a) = J(a) − J_a`. Empty when `J_a` is the bottom of `J(a)`.
pub fn i_set(table: &CayleyTable, a: usize) -> ElemSet {
    JStructure::new(table).i_set(a)
}

/// Precomputed principal ideals and J-classes of a table.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct JStructure {
    principal: Vec<ElemSet>,
    class_id: Vec<usize>,
    classes: Vec<ElemSet>,
}

impl JStructure {
    pub fn new(table: &CayleyTable) -> Self {
        let principal: Vec<ElemSet> = table.elements().map(|a| principal_ideal(table, a)).collect();
        let mut class_id = vec![usize::MAX; table.order()];
        let mut classes: Vec<ElemSet> = Vec::new();
        for a in table.elements() {
            if class_id[a] != usize::MAX {
                continue;
            }
            let members: ElemSet = table
                .elements()
                .filter(|&s| principal[s] == principal[a])
                .collect();
            for &s in &members {
                class_id[s] = classes.len();
            }
            classes.push(members);
        }
        JStructure {
            principal,
            class_id,
            classes,
        }
    }

    pub fn principal_ideal(&self, a: usize) -> &ElemSet {
        &self.principal[a]
    }

    pub fn class_id(&self, a: usize) -> usize {
        self.class_id[a]
    }

    pub fn j_class(&self, a: usize) -> ElemSet {
        self.classes[self.class_id[a]].clone()
    }

    pub fn j_class_len(&self, a: usize) -> usize {
        self.classes[self.class_id[a]].len()
    }

    pub fn i_set(&self, a: usize) -> ElemSet {
        let class = &self.classes[self.class_id[a]];
        self.principal[a].difference(class).copied().collect()
    }

    /// J-classes ordered so that each class comes after every class below it.
    pub fn classes_bottom_up(&self) -> Vec<JClassReport> {
        let mut out: Vec<JClassReport> = self
            .classes
            .iter()
            .map(|members| {
                let rep = *members.iter().next().expect("classes are nonempty");
                JClassReport {
                    members: members.iter().copied().collect(),
                    ideal: self.principal[rep].iter().copied().collect(),
                }
            })
            .collect();
        out.sort_by(|a, b| a.ideal.len().cmp(&b.ideal.len()).then(a.members.cmp(&b.members)));
        out
    }

    /// Whether all principal ideals (hence all ideals) form a chain.
    pub fn ideals_form_chain(&self) -> ChainVerdict {
        let reps: Vec<usize> = self
            .classes
            .iter()
            .map(|c| *c.iter().next().expect("classes are nonempty"))
            .collect();
        for (i, &a) in reps.iter().enumerate() {
            for &b in &reps[i + 1..] {
                let (ja, jb) = (&self.principal[a], &self.principal[b]);
                if !ja.is_subset(jb) && !jb.is_subset(ja) {
                    return ChainVerdict {
                        chain: false,
                        witness: Some(((a, ja.clone()), (b, jb.clone()))),
                    };
                }
            }
        }
        ChainVerdict {
            chain: true,
            witness: None,
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct JClassReport {
    pub members: Vec<usize>,
    pub ideal: Vec<usize>,
}

/// On failure, two generators with incomparable principal ideals.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct ChainVerdict {
    pub chain: bool,
    pub witness: Option<((usize, ElemSet), (usize, ElemSet))>,
}

/// In a finite semigroup every ideal is a union of principal ideals, and a
/// union over a chain is its largest member, so comparing principal ideals
/// decides the question for all ideals.
pub fn ideals_form_chain(table: &CayleyTable) -> ChainVerdict {
    JStructure::new(table).ideals_form_chain()
}
