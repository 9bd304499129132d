//! White and black metallic trees: levels, node classification, son words,
//! preferred sons, successors and the numbering correspondence between the
//! two trees.
//!
//! Both trees are generated by `B → B W^{p-4}` and `W → B W^{p-3}` and carry
//! their natural (breadth-first, left-to-right) numbering starting at 1; the
//! white tree is rooted at a white node, the black tree at a black node. A
//! node is named by the metallic code of its number.
//!
//! The sons of a node `ν` split into a *first group*, whose codes are
//! `[ν-1]` followed by one digit, and a *last group*, whose codes are `[ν]`
//! followed by one digit. The tables in [`son_groups`] describe both groups for
//! every node type; they drive classification and the top-down path walk.

use std::fmt;

use num_bigint::BigUint;
use num_traits::{One, Zero};

use crate::error::{Error, Result};
use crate::numeration::{seq_big_m, seq_m, Grade, MetallicCode, MetallicTerms};

/// Which metallic tree a code refers to.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum TreeKind {
    White,
    Black,
}

impl fmt::Display for TreeKind {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            TreeKind::White => "white",
            TreeKind::Black => "black",
        })
    }
}

/// Colour of a node.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum Status {
    Black,
    White,
}

impl fmt::Display for Status {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Status::Black => "b",
            Status::White => "w",
        })
    }
}

/// Refined node type.
///
/// White tree: `B1`/`B2` (black, signature 1/2), `Wa` (white, signature
/// `2..=d`, the left-type white node whose preferred son is its last son),
/// `W0`/`W1` (right-type white nodes, signature 0/1, preferred son
/// penultimate). The white root behaves exactly like `W1`.
///
/// Black tree: `BlackRoot`, `B1` (leftmost node of a level), `B0` (any other
/// black node), `W0` (rightmost node of a level), `Wa` (any other white node).
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum NodeType {
    BlackRoot,
    B0,
    B1,
    B2,
    Wa,
    W0,
    W1,
}

impl NodeType {
    pub fn status(self) -> Status {
        match self {
            NodeType::BlackRoot | NodeType::B0 | NodeType::B1 | NodeType::B2 => Status::Black,
            NodeType::Wa | NodeType::W0 | NodeType::W1 => Status::White,
        }
    }
}

impl fmt::Display for NodeType {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            NodeType::BlackRoot => "root",
            NodeType::B0 => "b0",
            NodeType::B1 => "b1",
            NodeType::B2 => "b2",
            NodeType::Wa => "wa",
            NodeType::W0 => "w0",
            NodeType::W1 => "w1",
        })
    }
}

/// Classification of a tree node.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub struct NodeClass {
    pub kind: TreeKind,
    pub node_type: NodeType,
    /// Rightmost digit of the node's code.
    pub signature: u32,
}

impl NodeClass {
    pub fn status(&self) -> Status {
        self.node_type.status()
    }

    /// The class of the root of a tree.
    pub fn root(kind: TreeKind) -> Self {
        let node_type = match kind {
            TreeKind::White => NodeType::W1,
            TreeKind::Black => NodeType::BlackRoot,
        };
        NodeClass { kind, node_type, signature: 1 }
    }
}

impl fmt::Display for NodeClass {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{} ({}, signature {})", self.node_type, self.status(), self.signature)
    }
}

/// One son in a son word: its type and the digit appended to form its code.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub struct SonSpec {
    pub node_type: NodeType,
    pub signature: u32,
}

/// Sons of a node type, split by code prefix: `first` sons have codes
/// `[ν-1]·digit`, `last` sons have codes `[ν]·digit`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct SonGroups {
    pub first: Vec<SonSpec>,
    pub last: Vec<SonSpec>,
}

impl SonGroups {
    pub fn len(&self) -> usize {
        self.first.len() + self.last.len()
    }

    pub fn is_empty(&self) -> bool {
        self.len() == 0
    }

    /// All sons, left to right.
    pub fn iter(&self) -> impl Iterator<Item = &SonSpec> {
        self.first.iter().chain(self.last.iter())
    }
}

/// Son groups of a node type; `node_type` must belong to `kind`'s tree.
///
/// White: `b → b2 (wa)^{p-5} w0`, `wa → b1 (wa)^{p-4} w0`,
/// `w0 → b1 (wa)^{p-5} w0 w1`, `w1 → b2 (wa)^{p-5} w0 w1`, where the first
/// group runs over consecutive digits starting at the black son's signature.
/// Black: `b0 → b0 (wa)^{p-4}`, `b1 → b1 (wa)^{p-4}`, `wa → b0 (wa)^{p-3}`,
/// `w0 → b0 (wa)^{p-4} w0`, and the root `→ b1 (wa)^{p-5} w0` whose black son
/// has signature 2.
pub fn son_groups(grade: Grade, kind: TreeKind, node_type: NodeType) -> SonGroups {
    let (d, c) = (grade.d(), grade.c());
    let run = |lo: u32, hi: u32, black: NodeType| -> Vec<SonSpec> {
        (lo..=hi)
            .map(|digit| SonSpec { node_type: if digit == lo { black } else { NodeType::Wa }, signature: digit })
            .collect()
    };
    let w0 = SonSpec { node_type: NodeType::W0, signature: 0 };
    let w1 = SonSpec { node_type: NodeType::W1, signature: 1 };
    match (kind, node_type) {
        (TreeKind::White, NodeType::B1 | NodeType::B2) => SonGroups { first: run(2, d, NodeType::B2), last: vec![w0] },
        (TreeKind::White, NodeType::Wa) => SonGroups { first: run(1, d, NodeType::B1), last: vec![w0] },
        (TreeKind::White, NodeType::W0) => SonGroups { first: run(1, c, NodeType::B1), last: vec![w0, w1] },
        (TreeKind::White, NodeType::W1) => SonGroups { first: run(2, d, NodeType::B2), last: vec![w0, w1] },
        (TreeKind::Black, NodeType::BlackRoot) => SonGroups { first: run(2, d, NodeType::B1), last: vec![w0] },
        (TreeKind::Black, NodeType::B1) => SonGroups { first: run(1, d, NodeType::B1), last: vec![] },
        (TreeKind::Black, NodeType::B0) => SonGroups { first: run(0, c, NodeType::B0), last: vec![] },
        (TreeKind::Black, NodeType::Wa) => SonGroups { first: run(0, d, NodeType::B0), last: vec![] },
        (TreeKind::Black, NodeType::W0) => SonGroups { first: run(0, c, NodeType::B0), last: vec![w0] },
        (kind, node_type) => panic!("node type {node_type} does not occur in the {kind} tree"),
    }
}

/// The ordered `(type, signature)` word of a node's sons.
pub fn sons_signature_word(grade: Grade, class: &NodeClass) -> Vec<SonSpec> {
    son_groups(grade, class.kind, class.node_type).iter().copied().collect()
}

/// Formats a son word compactly, e.g. `b2 wa wa w0 w1`.
pub fn format_son_word(word: &[SonSpec]) -> String {
    word.iter().map(|s| format!("{}:{}", s.node_type, s.signature)).collect::<Vec<_>>().join(" ")
}

/// Level of node `number` (≥ 1): white level `k` holds `M_{k-1} < ν ≤ M_k`,
/// black level `k` holds `m_{k-1} < ν ≤ m_k`.
pub fn level_of(grade: Grade, kind: TreeKind, number: &BigUint) -> u64 {
    assert!(!number.is_zero(), "node numbers start at 1");
    let mut bound = BigUint::zero();
    for (level, m) in MetallicTerms::white(grade).enumerate() {
        match kind {
            TreeKind::White => bound += m,
            TreeKind::Black => bound = m,
        }
        if *number <= bound {
            return level as u64;
        }
    }
    unreachable!("the metallic sequence is unbounded")
}

/// One entry of the walk arena: a node reached by the top-down walk.
#[derive(Debug, Clone, Copy)]
pub(crate) struct WalkNode {
    parent: Option<usize>,
    pub(crate) node_type: NodeType,
    pub(crate) signature: u32,
    /// The node's number is `value(first prefix_len digits) + offset`.
    pub(crate) prefix_len: usize,
    pub(crate) offset: u32,
}

/// Result of a top-down walk: the father chain of the target, root excluded.
#[derive(Debug, Clone)]
pub(crate) struct Walk {
    pub(crate) steps: Vec<WalkNode>,
    pub(crate) target_type: NodeType,
    pub(crate) visits: u64,
}

/// Top-down walk from the root to the node named by `code`, in linear time.
///
/// After reading a prefix `P` of the code, the walk knows the root paths of
/// the three consecutive nodes `x = value(P)`, `x+1`, `x+2` (a window). The
/// node named by `P·a` is either a last-group son of `x` or a first-group son
/// of `x+1` (both have codes starting with `[x]`), and the sons of consecutive
/// nodes are consecutive, so the next window is read off the concatenated
/// sons of the current one. Paths are kept in a parent-linked arena, so
/// extending a candidate costs O(1) and no list is ever copied.
pub(crate) fn walk(kind: TreeKind, code: &MetallicCode) -> Result<Walk> {
    if code.is_zero() {
        return Err(Error::ZeroNode);
    }
    let grade = code.grade();
    let root = NodeClass::root(kind).node_type;
    let digits = code.digits();
    let mut arena: Vec<WalkNode> = Vec::with_capacity(3 * digits.len() + 2 * grade.p() as usize);
    let mut visits = 0u64;
    let push = |arena: &mut Vec<WalkNode>, node: WalkNode, visits: &mut u64| {
        *visits += 1;
        arena.push(node);
        arena.len() - 1
    };

    // Nodes 1, 2, 3, …: the root, its sons, then the sons of node 2. This
    // covers every node up to p - 1 ≥ a + 2 for any leading digit a.
    // The opening nodes are addressed by the empty prefix: offset = number.
    let first = digits[0];
    let node = |parent, spec: &SonSpec, number: u32| WalkNode {
        parent: Some(parent),
        node_type: spec.node_type,
        signature: spec.signature,
        prefix_len: 0,
        offset: number,
    };
    let root_index =
        push(&mut arena, WalkNode { parent: None, node_type: root, signature: 1, prefix_len: 0, offset: 1 }, &mut visits);
    let mut opening = vec![root_index];
    let root_sons = son_groups(grade, kind, root);
    for (i, spec) in root_sons.iter().enumerate() {
        let index = push(&mut arena, node(root_index, spec, 2 + i as u32), &mut visits);
        opening.push(index);
    }
    let second = opening[1];
    let next_number = 2 + root_sons.len() as u32;
    for (i, spec) in son_groups(grade, kind, arena[second].node_type).iter().enumerate() {
        let index = push(&mut arena, node(second, spec, next_number + i as u32), &mut visits);
        opening.push(index);
    }
    let start = first as usize - 1;
    let mut window = [opening[start], opening[start + 1], opening[start + 2]];

    for (position, &digit) in digits.iter().enumerate().skip(1) {
        visits += 1;
        // Concatenated sons of the window: (owner slot, son spec, is first group).
        let mut sons: Vec<(usize, SonSpec, bool)> = Vec::with_capacity(3 * grade.p() as usize);
        for (slot, &member) in window.iter().enumerate() {
            let groups = son_groups(grade, kind, arena[member].node_type);
            sons.extend(groups.first.iter().map(|s| (slot, *s, true)));
            sons.extend(groups.last.iter().map(|s| (slot, *s, false)));
        }
        let mut hits = sons.iter().enumerate().filter(|(_, (slot, spec, in_first))| {
            spec.signature == digit && ((*slot == 0 && !*in_first) || (*slot == 1 && *in_first))
        });
        let (Some((at, _)), None) = (hits.next(), hits.next()) else {
            return Err(Error::Inconsistent { digit, position });
        };
        if at + 3 > sons.len() {
            return Err(Error::Inconsistent { digit, position });
        }
        let mut next = [0; 3];
        for (offset, (slot, spec, _)) in sons[at..at + 3].iter().enumerate() {
            let walk_node = WalkNode {
                parent: Some(window[*slot]),
                node_type: spec.node_type,
                signature: spec.signature,
                prefix_len: position + 1,
                offset: offset as u32,
            };
            next[offset] = push(&mut arena, walk_node, &mut visits);
        }
        window = next;
    }

    let target = arena[window[0]];
    let mut steps = Vec::new();
    let mut cursor = window[0];
    while let Some(parent) = arena[cursor].parent {
        visits += 1;
        steps.push(arena[cursor]);
        cursor = parent;
    }
    steps.reverse();
    Ok(Walk { steps, target_type: target.node_type, visits })
}

/// Classification of the node named by `code`, by a top-down walk from the
/// root (signatures alone cannot tell black from white nodes).
pub fn classify(kind: TreeKind, code: &MetallicCode) -> Result<NodeClass> {
    let walk = walk(kind, code)?;
    Ok(NodeClass { kind, node_type: walk.target_type, signature: code.signature() })
}

/// The preferred son of a white-tree node.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct PreferredSon {
    /// 1-based position among the sons.
    pub position: usize,
    pub son_count: usize,
    pub code: MetallicCode,
}

/// The son of a white-tree node whose code is `[ν]0`: the last son of black
/// and `wa` nodes, the penultimate son of `w0`/`w1` nodes (and of the root).
pub fn preferred_son(code: &MetallicCode) -> Result<PreferredSon> {
    let class = classify(TreeKind::White, code)?;
    let groups = son_groups(code.grade(), TreeKind::White, class.node_type);
    let position = groups.first.len() + 1;
    Ok(PreferredSon { position, son_count: groups.len(), code: code.push(0)? })
}

/// Where the successor `[ν]0` of a black-tree node sits.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum SuccessorPlace {
    /// The leftmost son of `ν + 1` (for any node that is not rightmost on its level).
    LeftmostSonOfNext,
    /// The rightmost node of the next level (for the rightmost node `m_n` of a level).
    RightmostOfNextLevel,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Successor {
    pub place: SuccessorPlace,
    pub code: MetallicCode,
}

/// The node of the black tree whose code is `[ν]0`.
pub fn successor(code: &MetallicCode) -> Result<Successor> {
    if code.is_zero() {
        return Err(Error::ZeroNode);
    }
    let rightmost = code.digits()[0] == 1 && code.digits()[1..].iter().all(|&x| x == 0);
    let place = if rightmost { SuccessorPlace::RightmostOfNextLevel } else { SuccessorPlace::LeftmostSonOfNext };
    Ok(Successor { place, code: code.push(0)? })
}

/// White-tree number of a black-tree node under the embedding of the black
/// tree into the white tree (the white tree minus the subtree of the root's
/// rightmost son): a node on black level `j ≥ 2` is shifted by `M_{j-2}`.
pub fn black_to_white_number(grade: Grade, number: &BigUint) -> BigUint {
    let level = level_of(grade, TreeKind::Black, number) as i64;
    if level < 2 {
        number.clone()
    } else {
        number + seq_big_m(grade, level - 2)
    }
}

/// Codes of the rightmost nodes, `n` levels down, of the subtrees rooted at
/// the root's sons (left to right).
///
/// White: `a 0 1^{n-1}` for `a = 2..=d`, then `1 0 1^n`, then `1^{n+2}`.
/// Black: `a c^{n-1} d` for `a = 1..=c`, then `1 0^{n+1}`.
pub fn decomposition_vectors(grade: Grade, kind: TreeKind, n: usize) -> Vec<MetallicCode> {
    assert!(n >= 1, "decomposition vectors start at n = 1");
    let (d, c) = (grade.d(), grade.c());
    let mut out = Vec::new();
    let make = |digits: Vec<u32>| MetallicCode::new(grade, digits).expect("decomposition vectors are canonical");
    match kind {
        TreeKind::White => {
            for a in 2..=d {
                let mut digits = vec![a, 0];
                digits.extend(std::iter::repeat_n(1, n - 1));
                out.push(make(digits));
            }
            let mut digits = vec![1, 0];
            digits.extend(std::iter::repeat_n(1, n));
            out.push(make(digits));
            out.push(make(vec![1; n + 2]));
        }
        TreeKind::Black => {
            for a in 1..=c {
                let mut digits = vec![a];
                digits.extend(std::iter::repeat_n(c, n - 1));
                digits.push(d);
                out.push(make(digits));
            }
            out.push(MetallicCode::power(grade, n + 1));
        }
    }
    out
}

/// Codes of the node `π_n` numbered `m_n` in the white tree: `1 0^n` as a
/// white code and `d (c-1)^{n-2} c` as a black code (`n ≥ 2`).
pub fn pi_codes(grade: Grade, n: usize) -> (MetallicCode, MetallicCode) {
    assert!(n >= 2, "pi codes start at n = 2");
    let mut digits = vec![grade.d()];
    digits.extend(std::iter::repeat_n(grade.c() - 1, n - 2));
    digits.push(grade.c());
    let black = MetallicCode::new(grade, digits).expect("pi code is canonical");
    (MetallicCode::power(grade, n), black)
}

/// Appends `h` zeros to `code`: the node `h` levels down the 0-branch (the
/// chain of preferred sons) of the subtree rooted at `code`.
pub fn zero_branch(code: &MetallicCode, h: usize) -> Result<MetallicCode> {
    if code.is_zero() {
        return Err(Error::ZeroNode);
    }
    let mut digits = code.digits().to_vec();
    digits.extend(std::iter::repeat_n(0, h));
    MetallicCode::new(code.grade(), digits)
}

/// `M_k` and `m_k` as convenient aliases for the level boundaries.
pub fn rightmost_number(grade: Grade, kind: TreeKind, level: u64) -> BigUint {
    match kind {
        TreeKind::White => seq_big_m(grade, level as i64),
        TreeKind::Black => seq_m(grade, level as i64),
    }
}

/// Number of the leftmost node on `level`.
pub fn leftmost_number(grade: Grade, kind: TreeKind, level: u64) -> BigUint {
    if level == 0 {
        BigUint::one()
    } else {
        rightmost_number(grade, kind, level - 1) + 1u32
    }
}
