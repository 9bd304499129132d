//! Brute-force ground truth.
//!
//! Trees are built explicitly by the production rules `B → B W^{p-4}` and
//! `W → B W^{p-3}`; codes are assigned by increment chains from `"1"` (and
//! cross-checked by an independent backtracking search); node types come from
//! colours and positions in the explicit tree; tiling adjacency comes from a
//! ring model of the tiling. [`verify_all`] then compares every formula and
//! algorithm of the crate against these explicit structures.
//!
//! The oracle never calls `encode`, `classify` or any navigation formula to
//! build its own data: only increment (shared with the arithmetic layer and
//! double-checked by the backtracking search) and `decode` are used.

use std::fmt;
use std::ops::{Range, RangeInclusive};

use num_bigint::BigUint;
use num_traits::ToPrimitive;

use crate::arithmetic::increment;
use crate::error::{Error, Result};
use crate::exec::Execution;
use crate::navigation::{
    father, father_black, locate_strip, neighbors_black, neighbors_of_tile, path_black, path_bottom_up,
    path_top_down, path_via_strips, strip_to_white_number, Neighbor, PathTrace, Shift, Tiling, TileAddress,
};
use crate::numeration::{decode, encode, is_canonical, seq_b, seq_big_m, seq_m, Grade, MetallicCode};
use crate::trees::{
    black_to_white_number, classify, decomposition_vectors, level_of, pi_codes, preferred_son, son_groups,
    successor, NodeType, Status, SuccessorPlace, TreeKind,
};

/// Largest tree [`build`] agrees to construct.
pub const NODE_LIMIT: u128 = 10_000_000;

/// Largest number checked against the backtracking code search.
const BACKTRACK_LIMIT: usize = 5000;

/// One node of an explicit tree.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct NodeRecord {
    pub number: usize,
    pub status: Status,
    pub level: u32,
    pub father: Option<usize>,
    /// Son numbers (consecutive in the natural numbering); empty on the last level.
    pub sons: Range<usize>,
}

/// An explicit metallic tree with its natural numbering.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct TreeSnapshot {
    pub grade: Grade,
    pub kind: TreeKind,
    nodes: Vec<NodeRecord>,
    levels: Vec<RangeInclusive<usize>>,
}

impl TreeSnapshot {
    /// Number of nodes.
    pub fn len(&self) -> usize {
        self.nodes.len()
    }

    pub fn is_empty(&self) -> bool {
        self.nodes.is_empty()
    }

    /// The deepest level built.
    pub fn max_level(&self) -> u32 {
        self.levels.len() as u32 - 1
    }

    /// The node numbered `number` (1-based).
    pub fn node(&self, number: usize) -> &NodeRecord {
        &self.nodes[number - 1]
    }

    pub fn nodes(&self) -> &[NodeRecord] {
        &self.nodes
    }

    /// Node numbers on `level`.
    pub fn level_range(&self, level: u32) -> RangeInclusive<usize> {
        self.levels[level as usize].clone()
    }

    pub fn is_leftmost(&self, number: usize) -> bool {
        *self.levels[self.node(number).level as usize].start() == number
    }

    pub fn is_rightmost(&self, number: usize) -> bool {
        *self.levels[self.node(number).level as usize].end() == number
    }

    /// The father chain of `number`, root first.
    pub fn ancestors(&self, number: usize) -> Vec<usize> {
        let mut chain = vec![number];
        let mut cursor = number;
        while let Some(f) = self.node(cursor).father {
            chain.push(f);
            cursor = f;
        }
        chain.reverse();
        chain
    }
}

/// Builds the tree of `kind` down to `max_level` by the production rules.
///
/// Refuses trees of more than [`NODE_LIMIT`] nodes.
pub fn build(grade: Grade, kind: TreeKind, max_level: u32) -> Result<TreeSnapshot> {
    let p = grade.p() as u128;
    let root_status = match kind {
        TreeKind::White => Status::White,
        TreeKind::Black => Status::Black,
    };
    // Size estimate by counting colours level by level.
    let (mut black, mut white): (u128, u128) = match root_status {
        Status::Black => (1, 0),
        Status::White => (0, 1),
    };
    let mut total: u128 = 1;
    for _ in 0..max_level {
        (black, white) = (
            black.saturating_add(white),
            black.saturating_mul(p - 4).saturating_add(white.saturating_mul(p - 3)),
        );
        total = total.saturating_add(black).saturating_add(white);
        if total > NODE_LIMIT {
            return Err(Error::TreeTooLarge { nodes: total, limit: NODE_LIMIT });
        }
    }

    let mut nodes = vec![NodeRecord { number: 1, status: root_status, level: 0, father: None, sons: 1..1 }];
    let mut levels = vec![1..=1];
    for level in 0..max_level {
        let range = levels[level as usize].clone();
        let start = nodes.len() + 1;
        for number in range {
            let white_sons = match nodes[number - 1].status {
                Status::Black => grade.p() - 4,
                Status::White => grade.p() - 3,
            };
            let first = nodes.len() + 1;
            nodes.push(NodeRecord { number: first, status: Status::Black, level: level + 1, father: Some(number), sons: 1..1 });
            for _ in 0..white_sons {
                let n = nodes.len() + 1;
                nodes.push(NodeRecord { number: n, status: Status::White, level: level + 1, father: Some(number), sons: 1..1 });
            }
            nodes[number - 1].sons = first..nodes.len() + 1;
        }
        levels.push(start..=nodes.len());
    }
    for record in nodes.iter_mut().filter(|r| r.sons == (1..1)) {
        record.sons = record.number..record.number;
    }
    Ok(TreeSnapshot { grade, kind, nodes, levels })
}

/// Codes of `0..=snapshot.len()` by repeated increments from `"0"`.
pub fn codes_by_chain(snapshot: &TreeSnapshot) -> Vec<MetallicCode> {
    let mut codes = Vec::with_capacity(snapshot.len() + 1);
    codes.push(MetallicCode::zero(snapshot.grade));
    for _ in 0..snapshot.len() {
        let next = increment(codes.last().expect("nonempty"));
        codes.push(next);
    }
    codes
}

/// The canonical digits of `n` by depth-first search over digit strings,
/// largest digit first, rejecting any prefix that contains a forbidden factor.
pub fn backtracking_code(grade: Grade, n: u64) -> Option<Vec<u32>> {
    if n == 0 {
        return Some(vec![0]);
    }
    let mut terms = vec![1u64];
    while let Some(&last) = terms.last() {
        let prev = if terms.len() >= 2 { terms[terms.len() - 2] } else { 0 };
        let next = (grade.base() as u64) * last - prev;
        if next > n {
            break;
        }
        terms.push(next);
    }
    terms.reverse();
    // capacity[i]: the largest value the places from i on can hold.
    let mut capacity = vec![0u64; terms.len() + 1];
    for i in (0..terms.len()).rev() {
        capacity[i] = capacity[i + 1] + grade.d() as u64 * terms[i];
    }
    fn search(grade: Grade, terms: &[u64], capacity: &[u64], i: usize, rest: u64, digits: &mut Vec<u32>) -> bool {
        if i == terms.len() {
            return rest == 0;
        }
        if rest > capacity[i] {
            return false;
        }
        let top = (rest / terms[i]).min(grade.d() as u64) as u32;
        for digit in (0..=top).rev() {
            digits.push(digit);
            if is_canonical(grade, digits)
                && search(grade, terms, capacity, i + 1, rest - digit as u64 * terms[i], digits)
            {
                return true;
            }
            digits.pop();
        }
        false
    }
    let mut digits = Vec::with_capacity(terms.len());
    search(grade, &terms, &capacity, 0, n, &mut digits).then(|| {
        let lead = digits.iter().position(|&x| x != 0).unwrap_or(digits.len() - 1);
        digits.split_off(lead)
    })
}

/// Values of all canonical digit strings of exactly `len` places (leading
/// zeros allowed), in enumeration order.
pub fn canonical_values(grade: Grade, len: usize) -> Vec<u64> {
    let terms: Vec<u64> = (0..len).map(|i| seq_m(grade, i as i64).to_u64().expect("small length")).collect();
    let mut out = Vec::new();
    let mut digits = Vec::with_capacity(len);
    fn go(grade: Grade, terms: &[u64], digits: &mut Vec<u32>, out: &mut Vec<u64>) {
        if digits.len() == terms.len() {
            let value = digits.iter().rev().zip(terms).map(|(&a, &m)| a as u64 * m).sum();
            out.push(value);
            return;
        }
        for digit in 0..=grade.d() {
            digits.push(digit);
            if is_canonical(grade, digits) {
                go(grade, terms, digits, out);
            }
            digits.pop();
        }
    }
    go(grade, &terms, &mut digits, &mut out);
    out
}

/// Explicit trees for one grade and depth, with everything the checks need.
#[derive(Debug, Clone)]
pub struct Oracle {
    pub grade: Grade,
    pub levels: u32,
    pub white: TreeSnapshot,
    pub black: TreeSnapshot,
    /// `codes[n]` for `0 ≤ n ≤ white.len()`, by increment chain.
    codes: Vec<MetallicCode>,
    /// Rightmost branch of the white tree: `branch[k]` is the rightmost node of level `k`.
    branch: Vec<usize>,
    /// `strips[n][β-1]`: white number of black node `β` of strip `n`.
    strips: Vec<Vec<usize>>,
    /// `(strip, black number)` of each white node (index `number - 1`).
    strip_of: Vec<(usize, usize)>,
}

impl Oracle {
    pub fn build(grade: Grade, levels: u32) -> Result<Self> {
        let white = build(grade, TreeKind::White, levels)?;
        let black = build(grade, TreeKind::Black, levels)?;
        let codes = codes_by_chain(&white);
        let mut branch = vec![1];
        while let Some(&last) = branch.last() {
            let sons = &white.node(last).sons;
            if sons.is_empty() {
                break;
            }
            branch.push(sons.end - 1);
        }
        // Peel the sector into strips: the subtree of branch[n] minus that of branch[n+1].
        let mut strips = Vec::with_capacity(branch.len());
        let mut strip_of = vec![(0, 0); white.len()];
        for (n, &lead) in branch.iter().enumerate() {
            let stop = branch.get(n + 1).copied();
            let mut members = vec![lead];
            let mut i = 0;
            while i < members.len() {
                let node = members[i];
                members.extend(white.node(node).sons.clone().filter(|&s| Some(s) != stop));
                i += 1;
            }
            for (j, &w) in members.iter().enumerate() {
                strip_of[w - 1] = (n, j + 1);
            }
            strips.push(members);
        }
        Ok(Oracle { grade, levels, white, black, codes, branch, strips, strip_of })
    }

    /// Oracle code of `n` (`0 ≤ n ≤ white.len()`).
    pub fn code(&self, n: usize) -> &MetallicCode {
        &self.codes[n]
    }

    fn snapshot(&self, kind: TreeKind) -> &TreeSnapshot {
        match kind {
            TreeKind::White => &self.white,
            TreeKind::Black => &self.black,
        }
    }

    /// Node type read off the explicit tree: colour and signature in the
    /// white tree, colour and position on the level in the black tree.
    pub fn node_type(&self, kind: TreeKind, n: usize) -> Option<NodeType> {
        let tree = self.snapshot(kind);
        let record = tree.node(n);
        let signature = self.codes[n].signature();
        Some(match (kind, record.status) {
            (TreeKind::White, _) if n == 1 => NodeType::W1,
            (TreeKind::Black, _) if n == 1 => NodeType::BlackRoot,
            (TreeKind::White, Status::Black) => match signature {
                1 => NodeType::B1,
                2 => NodeType::B2,
                _ => return None,
            },
            (TreeKind::White, Status::White) => match signature {
                0 => NodeType::W0,
                1 => NodeType::W1,
                _ => NodeType::Wa,
            },
            (TreeKind::Black, Status::Black) if tree.is_leftmost(n) => NodeType::B1,
            (TreeKind::Black, Status::Black) => NodeType::B0,
            (TreeKind::Black, Status::White) if tree.is_rightmost(n) => NodeType::W0,
            (TreeKind::Black, Status::White) => NodeType::Wa,
        })
    }

    /// Strip index and black number of white node `n`.
    pub fn strip_of(&self, n: usize) -> (usize, usize) {
        self.strip_of[n - 1]
    }

    /// White number of black node `beta` of strip `strip`, if built.
    pub fn strip_member(&self, strip: usize, beta: usize) -> Option<usize> {
        self.strips.get(strip)?.get(beta.checked_sub(1)?).copied()
    }

    /// Tiles next to tile `n` of sector `sector` in the ring model of the tiling.
    ///
    /// The tiles of a level, read sector after sector, form a cycle (level 0
    /// is the cycle of leading tiles around the central tile). Besides the
    /// tree edges, each tile `x` meets the leftmost son of its successor on
    /// the cycle; in {p+2,3} it also meets both cycle neighbours. Central tile
    /// is `(0, 0)`.
    pub fn ring_adjacency(&self, tiling: Tiling, sector: u32, n: usize) -> Vec<(u32, usize)> {
        let sectors = tiling.sides(self.grade);
        let tree = &self.white;
        let next = |(s, m): (u32, usize)| {
            let range = tree.level_range(tree.node(m).level);
            if m < *range.end() {
                (s, m + 1)
            } else {
                (s % sectors + 1, *range.start())
            }
        };
        let prev = |(s, m): (u32, usize)| {
            let range = tree.level_range(tree.node(m).level);
            if m > *range.start() {
                (s, m - 1)
            } else {
                ((s + sectors - 2) % sectors + 1, *range.end())
            }
        };
        let record = tree.node(n);
        let mut out = Vec::new();
        out.push(record.father.map_or((0, 0), |f| (sector, f)));
        out.extend(record.sons.clone().map(|s| (sector, s)));
        let (ns, nm) = next((sector, n));
        out.push((ns, tree.node(nm).sons.start));
        if record.status == Status::Black {
            out.push(record.father.map_or_else(|| unreachable!("the root is white"), |f| prev((sector, f))));
        }
        if tiling == Tiling::P23 {
            out.push(prev((sector, n)));
            out.push(next((sector, n)));
        }
        out
    }
}

/// Outcome of one named check.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct CheckResult {
    pub name: &'static str,
    pub p: u32,
    pub levels: u32,
    /// Number of items (nodes, codes, …) examined.
    pub checked: usize,
    /// The first counterexample, if any.
    pub witness: Option<String>,
}

impl CheckResult {
    pub fn passed(&self) -> bool {
        self.witness.is_none()
    }
}

impl fmt::Display for CheckResult {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "CHECK {} p={} levels={} ", self.name, self.p, self.levels)?;
        match &self.witness {
            None => write!(f, "PASS"),
            Some(w) => write!(f, "FAIL {w}"),
        }
    }
}

/// All check results of one oracle run.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Report {
    pub checks: Vec<CheckResult>,
}

impl Report {
    pub fn passed(&self) -> bool {
        self.checks.iter().all(CheckResult::passed)
    }

    pub fn failures(&self) -> impl Iterator<Item = &CheckResult> {
        self.checks.iter().filter(|c| !c.passed())
    }
}

impl fmt::Display for Report {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for check in &self.checks {
            writeln!(f, "{check}")?;
        }
        Ok(())
    }
}

struct Outcome {
    checked: usize,
    witness: Option<String>,
}

/// Runs `f` on `0..n`, keeping the lowest-index failure.
fn scan<F>(exec: Execution, n: usize, f: F) -> Outcome
where
    F: Fn(usize) -> Option<String> + Sync + Send,
{
    Outcome { checked: n, witness: exec.find_first(n, f) }
}

fn chain(outcomes: impl IntoIterator<Item = Outcome>) -> Outcome {
    let mut checked = 0;
    for outcome in outcomes {
        checked += outcome.checked;
        if outcome.witness.is_some() {
            return Outcome { checked, witness: outcome.witness };
        }
    }
    Outcome { checked, witness: None }
}

fn as_usize(n: &BigUint) -> Option<usize> {
    n.to_usize()
}

type Check = fn(&Oracle, Execution) -> Outcome;

const CHECKS: &[(&str, Check)] = &[
    ("level_counts", check_level_counts),
    ("codes", check_codes),
    ("code_tables", check_code_tables),
    ("decomposition_vectors", check_decomposition_vectors),
    ("classification", check_classification),
    ("son_words", check_son_words),
    ("preferred_son", check_preferred_son),
    ("successor", check_successor),
    ("numbering_shift", check_numbering_shift),
    ("strip_decomposition", check_strip_decomposition),
    ("father", check_father),
    ("paths", check_paths),
    ("neighbors_white", check_neighbors_white),
    ("neighbors_black", check_neighbors_black),
];

/// Names of the checks run by [`verify_all`], in report order.
pub fn check_names() -> Vec<&'static str> {
    CHECKS.iter().map(|(name, _)| *name).collect()
}

/// Runs every check against the oracle; independent checks (and the nodes
/// within a check) are sharded according to `exec`.
pub fn verify_all(oracle: &Oracle, exec: Execution) -> Report {
    let checks = exec.map(CHECKS, |(name, check)| {
        let outcome = check(oracle, exec);
        CheckResult { name, p: oracle.grade.p(), levels: oracle.levels, checked: outcome.checked, witness: outcome.witness }
    });
    Report { checks }
}

/// Builds the oracle for `(grade, levels)` and runs [`verify_all`].
pub fn verify(grade: Grade, levels: u32, exec: Execution) -> Result<Report> {
    Ok(verify_all(&Oracle::build(grade, levels)?, exec))
}

fn check_level_counts(o: &Oracle, exec: Execution) -> Outcome {
    let sizes = |kind: TreeKind| {
        let tree = o.snapshot(kind);
        (0..=tree.max_level()).find_map(|k| {
            let range = tree.level_range(k);
            let size = BigUint::from(range.end() + 1 - range.start());
            let (expected_size, expected_last) = match kind {
                TreeKind::White => (seq_m(o.grade, k as i64), seq_big_m(o.grade, k as i64)),
                TreeKind::Black => (seq_b(o.grade, k as u64), seq_m(o.grade, k as i64)),
            };
            (size != expected_size || BigUint::from(*range.end()) != expected_last)
                .then(|| format!("{kind} level {k}: {size} nodes ending at {}", range.end()))
        })
    };
    let links = |kind: TreeKind| {
        let tree = o.snapshot(kind);
        scan(exec, tree.len(), move |i| {
            let n = i + 1;
            let record = tree.node(n);
            if level_of(o.grade, kind, &BigUint::from(n)) != record.level as u64 {
                return Some(format!("{kind} node {n}: level_of disagrees with level {}", record.level));
            }
            if tree.ancestors(n).len() != record.level as usize + 1 {
                return Some(format!("{kind} node {n}: distance to the root differs from its level"));
            }
            record
                .sons
                .clone()
                .find(|&s| tree.node(s).father != Some(n) || tree.node(s).level != record.level + 1)
                .map(|s| format!("{kind} node {n}: son {s} does not point back"))
        })
    };
    let counted = o.white.len() + o.black.len();
    let shape = sizes(TreeKind::White).or_else(|| sizes(TreeKind::Black));
    chain([Outcome { checked: counted, witness: shape }, links(TreeKind::White), links(TreeKind::Black)])
}

fn check_codes(o: &Oracle, exec: Execution) -> Outcome {
    let encoded = scan(exec, o.white.len(), |i| {
        let n = i + 1;
        let code = &o.codes[n];
        (encode(o.grade, &BigUint::from(n)) != *code || decode(o.grade, code.digits()) != BigUint::from(n))
            .then(|| format!("node {n}: chain code {code} disagrees with encode/decode"))
    });
    let limit = o.white.len().min(BACKTRACK_LIMIT);
    let searched = scan(exec, limit, |i| {
        let n = i + 1;
        let found = backtracking_code(o.grade, n as u64);
        (found.as_deref() != Some(o.codes[n].digits()))
            .then(|| format!("node {n}: backtracking search gives {found:?}, chain gives {}", o.codes[n]))
    });
    chain([encoded, searched])
}

fn check_code_tables(o: &Oracle, _exec: Execution) -> Outcome {
    let (d, c) = (o.grade.d(), o.grade.c());
    let max = BigUint::from(o.white.len());
    let mut checked = 0;
    for k in 0usize.. {
        let m = seq_m(o.grade, k as i64);
        if m > max {
            break;
        }
        let mut cases = vec![(m, {
            let mut v = vec![0; k + 1];
            v[0] = 1;
            v
        }, "m")];
        cases.push((seq_big_m(o.grade, k as i64), vec![1; k + 1], "M"));
        if k >= 1 {
            let mut v = vec![c; k - 1];
            v.push(d);
            cases.push((seq_b(o.grade, k as u64), v, "b"));
        }
        for (value, digits, name) in cases {
            let Some(n) = as_usize(&value).filter(|&n| n <= o.white.len()) else { continue };
            checked += 1;
            if o.codes[n].digits() != digits.as_slice() {
                return Outcome { checked, witness: Some(format!("[{name}_{k}] = {} (node {n})", o.codes[n])) };
            }
        }
    }
    Outcome { checked, witness: None }
}

fn check_decomposition_vectors(o: &Oracle, _exec: Execution) -> Outcome {
    let mut checked = 0;
    for kind in [TreeKind::White, TreeKind::Black] {
        let tree = o.snapshot(kind);
        for n in 1..o.levels as usize {
            let vectors = decomposition_vectors(o.grade, kind, n);
            let tops: Vec<usize> = tree.node(1).sons.clone().collect();
            if vectors.len() != tops.len() {
                return Outcome { checked, witness: Some(format!("{kind} n={n}: {} vectors for {} subtrees", vectors.len(), tops.len())) };
            }
            for (i, (vector, &top)) in vectors.iter().zip(&tops).enumerate() {
                checked += 1;
                let mut node = top;
                for _ in 0..n {
                    node = tree.node(node).sons.end - 1;
                }
                if decode(o.grade, vector.digits()) != BigUint::from(node) {
                    return Outcome { checked, witness: Some(format!("{kind} n={n}: vector {vector} is not node {node}")) };
                }
                if kind == TreeKind::White {
                    let k = tops.len() - 1 - i;
                    let expected = seq_big_m(o.grade, n as i64 + 1) - seq_m(o.grade, n as i64) * k;
                    if expected != BigUint::from(node) {
                        return Outcome { checked, witness: Some(format!("white n={n}: node {node} is not M_(n+1) - {k} m_n")) };
                    }
                }
            }
        }
    }
    Outcome { checked, witness: None }
}

fn check_classification(o: &Oracle, exec: Execution) -> Outcome {
    let run = |kind: TreeKind| {
        scan(exec, o.snapshot(kind).len(), move |i| {
            let n = i + 1;
            let expected = o.node_type(kind, n);
            match classify(kind, &o.codes[n]) {
                Ok(class) if Some(class.node_type) == expected && class.signature == o.codes[n].signature() => None,
                other => Some(format!("{kind} node {n} ({}): classify gives {other:?}, tree gives {expected:?}", o.codes[n])),
            }
        })
    };
    chain([run(TreeKind::White), run(TreeKind::Black)])
}

fn check_son_words(o: &Oracle, exec: Execution) -> Outcome {
    let run = |kind: TreeKind| {
        let tree = o.snapshot(kind);
        scan(exec, tree.len(), move |i| {
            let n = i + 1;
            let record = tree.node(n);
            if record.sons.is_empty() {
                return None;
            }
            let node_type = o.node_type(kind, n)?;
            let groups = son_groups(o.grade, kind, node_type);
            let sons: Vec<usize> = record.sons.clone().collect();
            if sons.len() != groups.len() {
                return Some(format!("{kind} node {n}: {} sons, {node_type} word has {}", sons.len(), groups.len()));
            }
            let prefixes = std::iter::repeat_n(n - 1, groups.first.len()).chain(std::iter::repeat(n));
            for ((spec, &son), prefix) in groups.iter().zip(&sons).zip(prefixes) {
                let actual = o.node_type(kind, son);
                let expected_code = o.codes[prefix].push(spec.signature).ok();
                if actual != Some(spec.node_type) || expected_code.as_ref() != Some(&o.codes[son]) {
                    return Some(format!(
                        "{kind} node {n} ({node_type}): son {son} is {actual:?} {}, word says {} {:?}",
                        o.codes[son], spec.node_type, expected_code
                    ));
                }
            }
            None
        })
    };
    chain([run(TreeKind::White), run(TreeKind::Black)])
}

fn check_preferred_son(o: &Oracle, exec: Execution) -> Outcome {
    scan(exec, o.white.len(), |i| {
        let n = i + 1;
        let record = o.white.node(n);
        if record.sons.is_empty() {
            return None;
        }
        let target = o.codes[n].push(0).ok();
        let hits: Vec<usize> = record.sons.clone().filter(|&s| Some(&o.codes[s]) == target.as_ref()).collect();
        let [son] = hits[..] else {
            return Some(format!("node {n}: {} sons with code [ν]0", hits.len()));
        };
        let position = son - record.sons.start + 1;
        let expected = match o.node_type(TreeKind::White, n) {
            Some(NodeType::W0 | NodeType::W1) => record.sons.len() - 1,
            _ => record.sons.len(),
        };
        match preferred_son(&o.codes[n]) {
            Ok(ps) if ps.position == position && position == expected && ps.son_count == record.sons.len() && Some(&ps.code) == target.as_ref() => None,
            other => Some(format!("node {n}: preferred son {son} at {position}/{}, got {other:?}", record.sons.len())),
        }
    })
}

fn check_successor(o: &Oracle, exec: Execution) -> Outcome {
    let tree = &o.black;
    scan(exec, tree.len(), |i| {
        let n = i + 1;
        let record = tree.node(n);
        if record.level >= tree.max_level() {
            return None;
        }
        let rightmost = tree.is_rightmost(n);
        let expected = if rightmost { *tree.level_range(record.level + 1).end() } else { tree.node(n + 1).sons.start };
        let place = if rightmost { SuccessorPlace::RightmostOfNextLevel } else { SuccessorPlace::LeftmostSonOfNext };
        match successor(&o.codes[n]) {
            Ok(s) if s.place == place && as_usize(&s.code.value()) == Some(expected) => None,
            other => Some(format!("black node {n}: successor should be node {expected} ({place:?}), got {other:?}")),
        }
    })
}

fn check_numbering_shift(o: &Oracle, exec: Execution) -> Outcome {
    // The black tree as the white tree minus the subtree of the root's rightmost son.
    let cut = o.white.node(1).sons.end - 1;
    let mut embedded = vec![1];
    let mut i = 0;
    while i < embedded.len() {
        let node = embedded[i];
        embedded.extend(o.white.node(node).sons.clone().filter(|&s| s != cut));
        i += 1;
    }
    if embedded.len() != o.black.len() {
        return Outcome { checked: 0, witness: Some(format!("embedding has {} nodes, black tree {}", embedded.len(), o.black.len())) };
    }
    let mut position = vec![0; o.white.len() + 1];
    for (j, &w) in embedded.iter().enumerate() {
        position[w] = j + 1;
    }
    let shape = scan(exec, embedded.len(), |j| {
        let (beta, w) = (j + 1, embedded[j]);
        let (b, wr) = (o.black.node(beta), o.white.node(w));
        // The root keeps its white colour but, short of one son, behaves as black.
        let colour_ok = beta == 1 || b.status == wr.status;
        let father_ok = b.father == wr.father.map(|f| position[f]);
        if !colour_ok || b.level != wr.level || !father_ok {
            return Some(format!("black node {beta} does not match white node {w}"));
        }
        (black_to_white_number(o.grade, &BigUint::from(beta)) != BigUint::from(w))
            .then(|| format!("black node {beta}: black_to_white_number should give {w}"))
    });
    let mut checked = 0;
    let mut witness = None;
    for n in 2usize.. {
        let m = seq_m(o.grade, n as i64);
        if m > BigUint::from(o.white.len()) {
            break;
        }
        checked += 1;
        let (white, black) = pi_codes(o.grade, n);
        let beta = as_usize(&black.value());
        let ok = white.value() == m && beta.is_some_and(|b| b <= embedded.len() && BigUint::from(embedded[b - 1]) == m);
        if !ok {
            witness = Some(format!("pi_{n}: black code {black} does not name white node {m}"));
            break;
        }
    }
    chain([shape, Outcome { checked, witness }])
}

fn check_strip_decomposition(o: &Oracle, exec: Execution) -> Outcome {
    let mut covered = vec![0u32; o.white.len()];
    for members in &o.strips {
        for &w in members {
            covered[w - 1] += 1;
        }
    }
    if let Some(i) = covered.iter().position(|&k| k != 1) {
        return Outcome { checked: 0, witness: Some(format!("node {} lies in {} strips", i + 1, covered[i])) };
    }
    if let Some(n) = (0..o.branch.len()).find(|&n| BigUint::from(o.branch[n]) != seq_big_m(o.grade, n as i64)) {
        return Outcome { checked: 0, witness: Some(format!("leading tile of strip {n} is {}", o.branch[n])) };
    }
    let shapes = chain(o.strips.iter().enumerate().map(|(n, members)| {
        let mut local = vec![0; o.white.len() + 1];
        for (j, &w) in members.iter().enumerate() {
            local[w] = j + 1;
        }
        scan(exec, members.len(), move |j| {
            let (beta, w) = (j + 1, members[j]);
            let (b, wr) = (o.black.node(beta), o.white.node(w));
            let father_ok = if beta == 1 { b.father.is_none() } else { b.father == wr.father.map(|f| local[f]) };
            let colour_ok = beta == 1 || b.status == wr.status;
            (!colour_ok || !father_ok).then(|| format!("strip {n}: node {w} does not match black node {beta}"))
        })
    }));
    let located = scan(exec, o.white.len(), |i| {
        let n = i + 1;
        let (strip, beta) = o.strip_of(n);
        let location = locate_strip(o.grade, &BigUint::from(n));
        let back = strip_to_white_number(o.grade, strip as u64, &BigUint::from(beta));
        (location.strip != strip as u64 || location.black_number != BigUint::from(beta) || back != BigUint::from(n))
            .then(|| format!("node {n}: in strip {strip} as {beta}, locate_strip gives {location:?}"))
    });
    chain([shapes, located])
}

fn check_father(o: &Oracle, exec: Execution) -> Outcome {
    let run = |kind: TreeKind| {
        let tree = o.snapshot(kind);
        scan(exec, tree.len(), move |i| {
            let n = i + 1;
            let code = &o.codes[n];
            let got = match kind {
                TreeKind::White => father(code),
                TreeKind::Black => father_black(code),
            };
            match (tree.node(n).father, got) {
                (None, Err(Error::LeadingTile)) => None,
                (Some(f), Ok(c)) if c == o.codes[f] => None,
                (expected, got) => Some(format!("{kind} node {n} ({code}): father {expected:?}, got {got:?}")),
            }
        })
    };
    chain([run(TreeKind::White), run(TreeKind::Black)])
}

fn check_paths(o: &Oracle, exec: Execution) -> Outcome {
    let agree = |kind: TreeKind, n: usize, trace: Result<PathTrace>, name: &str| -> Option<String> {
        let tree = o.snapshot(kind);
        let expected = tree.ancestors(n);
        let trace = match trace {
            Ok(t) => t,
            Err(e) => return Some(format!("{kind} node {n}: {name} failed: {e}")),
        };
        let numbers: Vec<Option<usize>> = trace.numbers().iter().map(as_usize).collect();
        let types_ok = trace.steps.iter().zip(&expected[1..]).all(|(step, &m)| Some(step.node_type) == o.node_type(kind, m));
        let ok = numbers.iter().copied().eq(expected.iter().map(|&m| Some(m)))
            && trace.level() == tree.node(n).level as usize
            && types_ok;
        (!ok).then(|| format!("{kind} node {n}: {name} gives {numbers:?}, expected {expected:?}"))
    };
    let white = scan(exec, o.white.len(), |i| {
        let n = i + 1;
        let code = &o.codes[n];
        agree(TreeKind::White, n, path_bottom_up(code), "bottom-up")
            .or_else(|| agree(TreeKind::White, n, path_top_down(code), "top-down"))
            .or_else(|| agree(TreeKind::White, n, path_via_strips(code), "via strips"))
    });
    let black = scan(exec, o.black.len(), |i| {
        let n = i + 1;
        agree(TreeKind::Black, n, path_black(&o.codes[n]), "black")
    });
    chain([white, black])
}

fn sorted(mut v: Vec<(u32, usize)>) -> Vec<(u32, usize)> {
    v.sort_unstable();
    v
}

/// Compares a resolved neighbour list of tile `(1, n)` with the ring model.
fn compare_neighbors(o: &Oracle, tiling: Tiling, n: usize, got: &[(u32, usize)], what: &str) -> Option<String> {
    let expected = o.ring_adjacency(tiling, 1, n);
    let sides = tiling.sides(o.grade) as usize;
    let mut distinct = sorted(got.to_vec());
    distinct.dedup();
    if got.len() != sides || distinct.len() != sides {
        return Some(format!("{tiling} {what} node {n}: {} entries, {} distinct", got.len(), distinct.len()));
    }
    if got[0] != expected[0] {
        return Some(format!("{tiling} {what} node {n}: side 1 is {:?}, father is {:?}", got[0], expected[0]));
    }
    let sons: Vec<(u32, usize)> = o.white.node(n).sons.clone().map(|s| (1, s)).collect();
    if !got.windows(sons.len().max(1)).any(|w| w == sons.as_slice()) {
        return Some(format!("{tiling} {what} node {n}: sons {sons:?} not consecutive in {got:?}"));
    }
    (distinct != sorted(expected.clone())).then(|| format!("{tiling} {what} node {n}: got {got:?}, ring model {expected:?}"))
}

fn address(tile: &TileAddress) -> Option<(u32, usize)> {
    match &tile.code {
        None => Some((0, 0)),
        Some(code) => Some((tile.sector, as_usize(&code.value())?)),
    }
}

fn check_neighbors_white(o: &Oracle, exec: Execution) -> Outcome {
    let inner = |tiling: Tiling| {
        let sectors = tiling.sides(o.grade);
        let resolve = move |sector: u32, n: usize| -> Option<Vec<(u32, usize)>> {
            let tiles = neighbors_of_tile(o.grade, tiling, &TileAddress::new(sector, o.codes[n].clone())).ok()?;
            tiles.iter().map(address).collect()
        };
        let central = neighbors_of_tile(o.grade, tiling, &TileAddress::central()).ok().and_then(|t| t.iter().map(address).collect::<Option<Vec<_>>>());
        let expected_central: Vec<(u32, usize)> = (1..=sectors).map(|s| (s, 1)).collect();
        let central_ok = Outcome {
            checked: 1,
            witness: (central.as_ref() != Some(&expected_central)).then(|| format!("{tiling} central tile: {central:?}")),
        };
        let interior = o.white.len() - o.white.level_range(o.white.max_level()).count();
        let tiles = scan(exec, interior, move |i| {
            let n = i + 1;
            let Some(got) = resolve(1, n) else {
                return Some(format!("{tiling} node {n}: neighbours could not be computed"));
            };
            if let Some(w) = compare_neighbors(o, tiling, n, &got, "white") {
                return Some(w);
            }
            // Symmetry: every non-central neighbour inside the built levels lists this tile back.
            got.iter()
                .filter(|&&(s, m)| s != 0 && o.white.node(m).level < o.white.max_level())
                .find(|&&(s, m)| !resolve(s, m).is_some_and(|back| back.contains(&(1, n))))
                .map(|&(s, m)| format!("{tiling} node {n}: neighbour {s}:{m} does not list it back"))
        });
        chain([central_ok, tiles])
    };
    chain([inner(Tiling::P4), inner(Tiling::P23)])
}

fn check_neighbors_black(o: &Oracle, exec: Execution) -> Outcome {
    let inner = |tiling: Tiling| {
        let sectors = tiling.sides(o.grade);
        let interior = o.white.len() - o.white.level_range(o.white.max_level()).count();
        scan(exec, interior, move |i| {
            let n = i + 1;
            let (strip, beta) = o.strip_of(n);
            let entries = match neighbors_black(tiling, &o.codes[beta], strip as u64) {
                Ok(set) => set.entries,
                Err(e) => return Some(format!("{tiling} node {n} (strip {strip}, black {beta}): {e}")),
            };
            let mut got = Vec::with_capacity(entries.len());
            for entry in &entries {
                let resolved = match entry {
                    Neighbor::Central => Some((0, 0)),
                    Neighbor::Tile(code) => as_usize(&code.value()).and_then(|b| o.strip_member(strip, b)).map(|w| (1, w)),
                    Neighbor::Strip { shift, code } => {
                        let target = match shift {
                            Shift::Previous => strip.checked_sub(1),
                            Shift::Next => Some(strip + 1),
                        };
                        target.and_then(|t| o.strip_member(t, as_usize(&code.value())?)).map(|w| (1, w))
                    }
                    Neighbor::Sector { shift, code } => {
                        let sector = match shift {
                            Shift::Previous => sectors,
                            Shift::Next => 2 % sectors,
                        };
                        as_usize(&code.value()).map(|w| (sector, w))
                    }
                };
                match resolved {
                    Some(a) => got.push(a),
                    None => return Some(format!("{tiling} node {n} (strip {strip}, black {beta}): cannot resolve {entry}")),
                }
            }
            compare_neighbors(o, tiling, n, &got, &format!("strip {strip} black {beta}"))
        })
    };
    chain([inner(Tiling::P4), inner(Tiling::P23)])
}
