use super::{Annotation, Label, NodeId, NodeKind, PDocument, PNode, XDocument, XNode};

/// Preorder view of a probabilistic document. Node ids are preorder positions,
/// so comparing ids compares document order.
#[derive(Debug)]
pub struct DocIndex<'a> {
    nodes: Vec<&'a PNode>,
    parent: Vec<Option<NodeId>>,
    parent_edge: Vec<Option<&'a Annotation>>,
    children: Vec<Vec<NodeId>>,
    end: Vec<NodeId>,
}

impl<'a> DocIndex<'a> {
    pub fn new(doc: &'a PDocument) -> Self {
        let mut ix = DocIndex {
            nodes: Vec::new(),
            parent: Vec::new(),
            parent_edge: Vec::new(),
            children: Vec::new(),
            end: Vec::new(),
        };
        ix.visit(&doc.root, None, None);
        ix
    }

    fn visit(&mut self, node: &'a PNode, parent: Option<NodeId>, edge: Option<&'a Annotation>) -> NodeId {
        let id = self.nodes.len();
        self.nodes.push(node);
        self.parent.push(parent);
        self.parent_edge.push(edge);
        self.children.push(Vec::with_capacity(node.children.len()));
        self.end.push(id);
        for e in &node.children {
            let c = self.visit(&e.child, Some(id), Some(&e.annotation));
            self.children[id].push(c);
        }
        self.end[id] = self.nodes.len();
        id
    }

    pub fn len(&self) -> usize {
        self.nodes.len()
    }

    pub fn is_empty(&self) -> bool {
        self.nodes.is_empty()
    }

    pub fn node(&self, id: NodeId) -> &'a PNode {
        self.nodes[id]
    }

    pub fn kind(&self, id: NodeId) -> &'a NodeKind {
        &self.nodes[id].kind
    }

    pub fn label(&self, id: NodeId) -> Option<&'a Label> {
        self.nodes[id].kind.label()
    }

    pub fn parent(&self, id: NodeId) -> Option<NodeId> {
        self.parent[id]
    }

    /// Annotation on the edge from the parent to `id`.
    pub fn parent_edge(&self, id: NodeId) -> Option<&'a Annotation> {
        self.parent_edge[id]
    }

    pub fn children(&self, id: NodeId) -> &[NodeId] {
        &self.children[id]
    }

    /// Exclusive end of the preorder range covered by the subtree of `id`.
    pub fn subtree_end(&self, id: NodeId) -> NodeId {
        self.end[id]
    }

    pub fn is_ancestor(&self, anc: NodeId, desc: NodeId) -> bool {
        anc < desc && desc < self.end[anc]
    }

    pub fn ids(&self) -> std::ops::Range<NodeId> {
        0..self.nodes.len()
    }

    /// Topmost regular descendants of `id` reached through probabilistic nodes only.
    pub fn regular_below(&self, id: NodeId) -> Vec<NodeId> {
        let mut out = Vec::new();
        let mut stack: Vec<NodeId> = self.children[id].iter().rev().copied().collect();
        while let Some(n) = stack.pop() {
            if self.kind(n).is_regular() {
                out.push(n);
            } else {
                stack.extend(self.children[n].iter().rev());
            }
        }
        out
    }
}

/// Preorder view of a deterministic document.
#[derive(Debug)]
pub struct XIndex<'a> {
    nodes: Vec<&'a XNode>,
    parent: Vec<Option<NodeId>>,
    children: Vec<Vec<NodeId>>,
}

impl<'a> XIndex<'a> {
    pub fn new(doc: &'a XDocument) -> Self {
        let mut ix = XIndex { nodes: Vec::new(), parent: Vec::new(), children: Vec::new() };
        ix.visit(&doc.root, None);
        ix
    }

    fn visit(&mut self, node: &'a XNode, parent: Option<NodeId>) -> NodeId {
        let id = self.nodes.len();
        self.nodes.push(node);
        self.parent.push(parent);
        self.children.push(Vec::with_capacity(node.children.len()));
        for c in &node.children {
            let cid = self.visit(c, Some(id));
            self.children[id].push(cid);
        }
        id
    }

    pub fn len(&self) -> usize {
        self.nodes.len()
    }

    pub fn is_empty(&self) -> bool {
        self.nodes.is_empty()
    }

    pub fn node(&self, id: NodeId) -> &'a XNode {
        self.nodes[id]
    }

    pub fn label(&self, id: NodeId) -> &'a Label {
        &self.nodes[id].label
    }

    pub fn parent(&self, id: NodeId) -> Option<NodeId> {
        self.parent[id]
    }

    pub fn children(&self, id: NodeId) -> &[NodeId] {
        &self.children[id]
    }

    pub fn ids(&self) -> std::ops::Range<NodeId> {
        0..self.nodes.len()
    }
}
