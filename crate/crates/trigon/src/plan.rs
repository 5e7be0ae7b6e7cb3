//! Construction plans: recipes that build a triangulation from single
//! edges.
//!
//! A plan is a tree whose leaves are degenerate edges and whose internal
//! nodes either apply one vertex-adding operation ([`Op::W`] or [`Op::Z`])
//! to a sub-plan or merge two sub-plans along their bottom edges. Plans are
//! stored as an index arena in postorder (children strictly before
//! parents, root last), so traversals are simple forward or backward scans
//! and arbitrarily deep plans need no recursion.
//!
//! The text form is an s-expression, e.g. `(merge (apply W (leaf)) (leaf))`.

use std::fmt;
use std::str::FromStr;

use thiserror::Error;

/// One vertex-adding operation. `W` hangs the new triangle so that the new
/// vertex becomes the first bottom vertex, `Z` so that it becomes the
/// second.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum Op {
    W,
    Z,
}

impl Op {
    pub const ALL: [Op; 2] = [Op::W, Op::Z];

    pub fn letter(self) -> char {
        match self {
            Op::W => 'W',
            Op::Z => 'Z',
        }
    }

    /// The other operation; `W` and `Z` are mirror images.
    pub fn mirrored(self) -> Op {
        match self {
            Op::W => Op::Z,
            Op::Z => Op::W,
        }
    }
}

impl fmt::Display for Op {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.letter())
    }
}

impl FromStr for Op {
    type Err = OpsParseError;

    fn from_str(s: &str) -> Result<Op, OpsParseError> {
        match s {
            "W" => Ok(Op::W),
            "Z" => Ok(Op::Z),
            _ => Err(OpsParseError {
                position: 0,
                found: s.chars().next().unwrap_or(' '),
            }),
        }
    }
}

/// Error from [`parse_ops`]: a character other than `W` or `Z`.
#[derive(Clone, Debug, PartialEq, Eq, Error)]
#[error("expected 'W' or 'Z' at position {position}, found {found:?}")]
pub struct OpsParseError {
    pub position: usize,
    pub found: char,
}

/// Parses an operation string such as `"WZZW"`, one letter per operation in
/// application order. ASCII whitespace is ignored.
pub fn parse_ops(s: &str) -> Result<Vec<Op>, OpsParseError> {
    let mut out = Vec::new();
    for (position, ch) in s.char_indices() {
        match ch {
            'W' => out.push(Op::W),
            'Z' => out.push(Op::Z),
            c if c.is_ascii_whitespace() => {}
            c => return Err(OpsParseError { position, found: c }),
        }
    }
    Ok(out)
}

/// Renders operations in application order as a compact string.
pub fn ops_string(ops: &[Op]) -> String {
    ops.iter().map(|op| op.letter()).collect()
}

/// Handle to a node inside one [`Plan`] arena.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub struct PlanId(pub(crate) usize);

/// A plan node. Child handles always point at earlier arena slots.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum PlanNode {
    /// A degenerate edge: the 2-gon.
    Leaf,
    /// Apply `W` or `Z` across the sub-plan's bottom edge.
    Apply(Op, PlanId),
    /// Glue two sub-plans along their bottom edges.
    Merge(PlanId, PlanId),
}

impl PlanNode {
    fn shifted(self, offset: usize) -> PlanNode {
        match self {
            PlanNode::Leaf => PlanNode::Leaf,
            PlanNode::Apply(op, q) => PlanNode::Apply(op, PlanId(q.0 + offset)),
            PlanNode::Merge(l, r) => PlanNode::Merge(PlanId(l.0 + offset), PlanId(r.0 + offset)),
        }
    }
}

/// A construction plan, stored as a postorder arena.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Plan {
    nodes: Vec<PlanNode>,
}

impl Plan {
    /// The trivial plan: a single degenerate edge.
    pub fn leaf() -> Plan {
        Plan {
            nodes: vec![PlanNode::Leaf],
        }
    }

    /// Wraps `inner` in one application of `op`.
    pub fn apply(op: Op, inner: Plan) -> Plan {
        let mut plan = inner;
        let child = plan.root();
        plan.nodes.push(PlanNode::Apply(op, child));
        plan
    }

    /// Joins two plans under a merge node.
    pub fn merge(left: Plan, right: Plan) -> Plan {
        let mut plan = left;
        let left_root = plan.root();
        let offset = plan.nodes.len();
        plan.nodes
            .extend(right.nodes.into_iter().map(|node| node.shifted(offset)));
        let right_root = PlanId(plan.nodes.len() - 1);
        plan.nodes.push(PlanNode::Merge(left_root, right_root));
        plan
    }

    /// A pure chain: `ops[0]` applied first to a leaf, and so on.
    pub fn from_ops(ops: &[Op]) -> Plan {
        let mut plan = Plan::leaf();
        for &op in ops {
            let child = plan.root();
            plan.nodes.push(PlanNode::Apply(op, child));
        }
        plan
    }

    /// Builds a plan from raw arena nodes; callers must supply postorder
    /// (children strictly before parents, root last).
    pub(crate) fn from_nodes(nodes: Vec<PlanNode>) -> Plan {
        debug_assert!(!nodes.is_empty());
        debug_assert!(nodes.iter().enumerate().all(|(i, node)| match node {
            PlanNode::Leaf => true,
            PlanNode::Apply(_, q) => q.0 < i,
            PlanNode::Merge(l, r) => l.0 < i && r.0 < i,
        }));
        Plan { nodes }
    }

    pub fn root(&self) -> PlanId {
        PlanId(self.nodes.len() - 1)
    }

    pub fn node(&self, id: PlanId) -> PlanNode {
        self.nodes[id.0]
    }

    /// All nodes, children before parents, root last.
    pub fn nodes(&self) -> &[PlanNode] {
        &self.nodes
    }

    pub fn node_count(&self) -> usize {
        self.nodes.len()
    }

    pub fn leaf_count(&self) -> usize {
        self.nodes
            .iter()
            .filter(|n| matches!(n, PlanNode::Leaf))
            .count()
    }

    pub fn apply_count(&self) -> usize {
        self.nodes
            .iter()
            .filter(|n| matches!(n, PlanNode::Apply(..)))
            .count()
    }

    pub fn merge_count(&self) -> usize {
        self.nodes
            .iter()
            .filter(|n| matches!(n, PlanNode::Merge(..)))
            .count()
    }

    /// Vertex count of the triangulation the plan builds: leaves contribute
    /// two vertices, each application adds one, each merge glues two
    /// together. Equals `apply_count + merge_count + 2`.
    pub fn vertex_count(&self) -> usize {
        self.apply_count() + self.merge_count() + 2
    }

    /// Whether the subtree rooted at `id` is a pure application chain down
    /// to a leaf.
    pub fn subtree_is_chain(&self, id: PlanId) -> bool {
        let mut at = id;
        loop {
            match self.node(at) {
                PlanNode::Leaf => return true,
                PlanNode::Apply(_, inner) => at = inner,
                PlanNode::Merge(..) => return false,
            }
        }
    }

    /// The operations of a merge-free plan in application order, or `None`
    /// if the plan contains a merge.
    pub fn as_chain(&self) -> Option<Vec<Op>> {
        let mut ops = Vec::new();
        let mut at = self.root();
        loop {
            match self.node(at) {
                PlanNode::Leaf => break,
                PlanNode::Apply(op, inner) => {
                    ops.push(op);
                    at = inner;
                }
                PlanNode::Merge(..) => return None,
            }
        }
        ops.reverse();
        Some(ops)
    }

    /// Renders the plan as an s-expression.
    pub fn to_sexpr(&self) -> String {
        enum Item {
            Node(PlanId),
            Text(&'static str),
        }
        let mut out = String::new();
        let mut stack = vec![Item::Node(self.root())];
        while let Some(item) = stack.pop() {
            match item {
                Item::Text(s) => out.push_str(s),
                Item::Node(id) => match self.node(id) {
                    PlanNode::Leaf => out.push_str("(leaf)"),
                    PlanNode::Apply(op, inner) => {
                        out.push_str("(apply ");
                        out.push(op.letter());
                        out.push(' ');
                        stack.push(Item::Text(")"));
                        stack.push(Item::Node(inner));
                    }
                    PlanNode::Merge(l, r) => {
                        out.push_str("(merge ");
                        stack.push(Item::Text(")"));
                        stack.push(Item::Node(r));
                        stack.push(Item::Text(" "));
                        stack.push(Item::Node(l));
                    }
                },
            }
        }
        out
    }

    /// Parses the s-expression form. The grammar is
    /// `plan := (leaf) | (apply W|Z plan) | (merge plan plan)`.
    pub fn parse_sexpr(text: &str) -> Result<Plan, PlanParseError> {
        parse_sexpr(text)
    }
}

impl fmt::Display for Plan {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.to_sexpr())
    }
}

/// Error from [`Plan::parse_sexpr`].
#[derive(Clone, Debug, PartialEq, Eq, Error)]
pub enum PlanParseError {
    #[error("unexpected character {found:?} at byte {position}")]
    UnexpectedChar { position: usize, found: char },
    #[error("expected {expected} at byte {position}, found {found:?}")]
    UnexpectedToken {
        position: usize,
        expected: &'static str,
        found: String,
    },
    #[error("input ended inside a plan")]
    UnexpectedEnd,
    #[error("trailing input at byte {position}")]
    TrailingInput { position: usize },
}

#[derive(Clone, Debug, PartialEq, Eq)]
enum Token {
    Open,
    Close,
    Atom(usize, usize),
}

struct Tokens<'a> {
    text: &'a str,
    at: usize,
}

impl<'a> Tokens<'a> {
    fn new(text: &'a str) -> Tokens<'a> {
        Tokens { text, at: 0 }
    }

    fn next(&mut self) -> Result<Option<(usize, Token)>, PlanParseError> {
        let bytes = self.text.as_bytes();
        while self.at < bytes.len() && bytes[self.at].is_ascii_whitespace() {
            self.at += 1;
        }
        if self.at >= bytes.len() {
            return Ok(None);
        }
        let start = self.at;
        match bytes[start] {
            b'(' => {
                self.at += 1;
                Ok(Some((start, Token::Open)))
            }
            b')' => {
                self.at += 1;
                Ok(Some((start, Token::Close)))
            }
            c if c.is_ascii_alphabetic() => {
                while self.at < bytes.len() && bytes[self.at].is_ascii_alphabetic() {
                    self.at += 1;
                }
                Ok(Some((start, Token::Atom(start, self.at))))
            }
            _ => Err(PlanParseError::UnexpectedChar {
                position: start,
                found: self.text[start..].chars().next().unwrap(),
            }),
        }
    }

    fn expect_close(&mut self) -> Result<(), PlanParseError> {
        match self.next()? {
            Some((_, Token::Close)) => Ok(()),
            Some((position, tok)) => Err(PlanParseError::UnexpectedToken {
                position,
                expected: "')'",
                found: self.describe(&tok),
            }),
            None => Err(PlanParseError::UnexpectedEnd),
        }
    }

    fn describe(&self, tok: &Token) -> String {
        match tok {
            Token::Open => "(".to_string(),
            Token::Close => ")".to_string(),
            Token::Atom(s, e) => self.text[*s..*e].to_string(),
        }
    }
}

enum Frame {
    Apply(Op),
    MergeAwaitingLeft,
    MergeAwaitingRight(PlanId),
}

fn parse_sexpr(text: &str) -> Result<Plan, PlanParseError> {
    let mut toks = Tokens::new(text);
    let mut frames: Vec<Frame> = Vec::new();
    let mut nodes: Vec<PlanNode> = Vec::new();
    let mut done: Option<PlanId> = None;

    loop {
        if let Some(value) = done.take() {
            match frames.last_mut() {
                None => {
                    if let Some((position, _)) = toks.next()? {
                        return Err(PlanParseError::TrailingInput { position });
                    }
                    return Ok(Plan { nodes });
                }
                Some(Frame::Apply(op)) => {
                    let op = *op;
                    toks.expect_close()?;
                    frames.pop();
                    nodes.push(PlanNode::Apply(op, value));
                    done = Some(PlanId(nodes.len() - 1));
                    continue;
                }
                Some(frame @ Frame::MergeAwaitingLeft) => {
                    *frame = Frame::MergeAwaitingRight(value);
                }
                Some(Frame::MergeAwaitingRight(left)) => {
                    let left = *left;
                    toks.expect_close()?;
                    frames.pop();
                    nodes.push(PlanNode::Merge(left, value));
                    done = Some(PlanId(nodes.len() - 1));
                    continue;
                }
            }
        }

        match toks.next()? {
            None => return Err(PlanParseError::UnexpectedEnd),
            Some((_, Token::Open)) => {}
            Some((position, tok)) => {
                return Err(PlanParseError::UnexpectedToken {
                    position,
                    expected: "'('",
                    found: toks.describe(&tok),
                })
            }
        }
        let (kw_pos, keyword) = match toks.next()? {
            None => return Err(PlanParseError::UnexpectedEnd),
            Some((pos, Token::Atom(s, e))) => (pos, &text[s..e]),
            Some((position, tok)) => {
                return Err(PlanParseError::UnexpectedToken {
                    position,
                    expected: "'leaf', 'apply' or 'merge'",
                    found: toks.describe(&tok),
                })
            }
        };
        match keyword {
            "leaf" => {
                toks.expect_close()?;
                nodes.push(PlanNode::Leaf);
                done = Some(PlanId(nodes.len() - 1));
            }
            "apply" => {
                let op = match toks.next()? {
                    None => return Err(PlanParseError::UnexpectedEnd),
                    Some((_, Token::Atom(s, e))) if &text[s..e] == "W" => Op::W,
                    Some((_, Token::Atom(s, e))) if &text[s..e] == "Z" => Op::Z,
                    Some((position, tok)) => {
                        return Err(PlanParseError::UnexpectedToken {
                            position,
                            expected: "'W' or 'Z'",
                            found: toks.describe(&tok),
                        })
                    }
                };
                frames.push(Frame::Apply(op));
            }
            "merge" => frames.push(Frame::MergeAwaitingLeft),
            _ => {
                return Err(PlanParseError::UnexpectedToken {
                    position: kw_pos,
                    expected: "'leaf', 'apply' or 'merge'",
                    found: keyword.to_string(),
                })
            }
        }
    }
}
