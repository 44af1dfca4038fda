use std::collections::HashMap;

use crate::model::{Label, NodeId, XDocument, XNode};

pub type ClassId = usize;

/// Isomorphism classes of the subtrees of a deterministic tree.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct IsoClasses {
    /// Class of each node, indexed by preorder id.
    pub class_of: Vec<ClassId>,
    /// Label and child-class word of each class.
    pub classes: Vec<(Label, Vec<ClassId>)>,
    /// Class of the root.
    pub accepting: ClassId,
}

impl IsoClasses {
    pub fn len(&self) -> usize {
        self.classes.len()
    }

    pub fn is_empty(&self) -> bool {
        self.classes.is_empty()
    }

    pub fn label(&self, c: ClassId) -> &Label {
        &self.classes[c].0
    }

    pub fn word(&self, c: ClassId) -> &[ClassId] {
        &self.classes[c].1
    }
}

/// Ordered isomorphism classes: two nodes share a class iff their subtrees
/// are equal as ordered trees.
pub fn iso_classes(w: &XDocument) -> IsoClasses {
    build(&w.root, true)
}

/// Unordered variant: child words are sorted, so subtrees equal up to sibling
/// permutation share a class.
pub(crate) fn unordered_classes(w: &XDocument) -> IsoClasses {
    build(&w.root, false)
}

fn build(root: &XNode, ordered: bool) -> IsoClasses {
    let mut b = Builder { ordered, ids: HashMap::new(), classes: Vec::new(), class_of: Vec::new() };
    let accepting = b.visit(root);
    IsoClasses { class_of: b.class_of, classes: b.classes, accepting }
}

struct Builder {
    ordered: bool,
    ids: HashMap<(Label, Vec<ClassId>), ClassId>,
    classes: Vec<(Label, Vec<ClassId>)>,
    class_of: Vec<ClassId>,
}

impl Builder {
    fn visit(&mut self, node: &XNode) -> ClassId {
        let me: NodeId = self.class_of.len();
        self.class_of.push(0);
        let mut word: Vec<ClassId> = node.children.iter().map(|c| self.visit(c)).collect();
        if !self.ordered {
            word.sort_unstable();
        }
        let key = (node.label.clone(), word);
        let next = self.classes.len();
        let id = *self.ids.entry(key.clone()).or_insert(next);
        if id == next {
            self.classes.push(key);
        }
        self.class_of[me] = id;
        id
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::oracle::trees_equal;

    fn doc(root: XNode) -> XDocument {
        XDocument::new(root, true)
    }

    #[test]
    fn class_counts() {
        let l = XNode::leaf;
        let c = iso_classes(&doc(XNode::new("a", vec![l("b"), l("b")])));
        assert_eq!(c.len(), 2);
        assert_eq!(c.word(c.accepting), &[c.class_of[1], c.class_of[1]]);
        assert_eq!(iso_classes(&doc(XNode::new("a", vec![l("b"), l("c")]))).len(), 3);
        let ab = || XNode::new("a", vec![l("b")]);
        assert_eq!(iso_classes(&doc(XNode::new("a", vec![ab(), ab()]))).len(), 3);
    }

    #[test]
    fn order_sensitivity() {
        let l = XNode::leaf;
        let t = doc(XNode::new(
            "r",
            vec![XNode::new("a", vec![l("b"), l("c")]), XNode::new("a", vec![l("c"), l("b")])],
        ));
        let o = iso_classes(&t);
        assert_ne!(o.class_of[1], o.class_of[4]);
        let u = unordered_classes(&t);
        assert_eq!(u.class_of[1], u.class_of[4]);
    }

    #[test]
    fn same_class_iff_equal_subtrees() {
        use crate::random::{random_xtree, TreeShape};
        use rand::SeedableRng;
        let mut rng = rand_chacha::ChaCha8Rng::seed_from_u64(11);
        for _ in 0..50 {
            let t = doc(random_xtree(&mut rng, &TreeShape { max_nodes: 14, max_children: 3, labels: 2 }));
            let c = iso_classes(&t);
            let ix = t.index();
            for a in ix.ids() {
                for b in ix.ids() {
                    let same = trees_equal(
                        &doc(ix.node(a).clone()),
                        &doc(ix.node(b).clone()),
                        true,
                    );
                    assert_eq!(c.class_of[a] == c.class_of[b], same);
                }
            }
        }
    }
}
