//! Navigation in the tilings {p,4} and {p+2,3}: fathers, neighbours and
//! paths to the leading tile.
//!
//! The tiling is split around a central tile into sectors, each spanned by a
//! white metallic tree whose root is the sector's *leading tile*; a sector in
//! turn splits into strips spanned by black metallic trees, the strip `ℬ_n`
//! being led by the node `M_n` of the sector's rightmost branch. Tiles are
//! named by white codes (within a sector) or black codes (within a strip).
//!
//! Sides are numbered counterclockwise starting with side 1, the side shared
//! with the father. On top of the tree edges, a tile `ν` meets:
//! - in {p,4}: the leftmost son of `ν+1` (its last side) and, for black tiles,
//!   the tile `father(ν)-1` (side 2);
//! - in {p+2,3}: additionally its neighbours `ν-1` and `ν+1` on the same level.
//!
//! Where such a neighbour lies beyond the sector (or strip) the entry is a
//! marker carrying the address in the adjacent sector (or strip). Sectors are
//! numbered counterclockwise, so the `ν+1` direction leads to the next one.

use std::fmt;

use num_bigint::BigUint;
use num_traits::One;

use crate::arithmetic::{decrement, increment};
use crate::error::{Error, Result};
use crate::numeration::{decode, encode, seq_big_m, Grade, MetallicCode};
use crate::trees::{
    classify, level_of, son_groups, walk, NodeClass, NodeType, Status, TreeKind, WalkNode,
};

/// The two tilings handled by the crate.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum Tiling {
    /// {p,4}: regular p-gons, four at each vertex.
    P4,
    /// {p+2,3}: regular (p+2)-gons, three at each vertex.
    P23,
}

impl Tiling {
    /// Number of sides of a tile, which is also the number of sectors.
    pub fn sides(self, grade: Grade) -> u32 {
        match self {
            Tiling::P4 => grade.p(),
            Tiling::P23 => grade.p() + 2,
        }
    }
}

impl fmt::Display for Tiling {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Tiling::P4 => "{p,4}",
            Tiling::P23 => "{p+2,3}",
        })
    }
}

/// Direction towards an adjacent sector or strip.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum Shift {
    /// Clockwise neighbour (the `ν-1` side).
    Previous,
    /// Counterclockwise neighbour (the `ν+1` side).
    Next,
}

/// One side of a tile.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub enum Neighbor {
    /// A tile of the same sector (white codes) or strip (black codes).
    Tile(MetallicCode),
    /// The central tile.
    Central,
    /// A tile of the adjacent sector, named by its white code there.
    Sector { shift: Shift, code: MetallicCode },
    /// A tile of the adjacent strip of the same sector, named by its black code there.
    Strip { shift: Shift, code: MetallicCode },
}

impl Neighbor {
    pub fn is_marker(&self) -> bool {
        !matches!(self, Neighbor::Tile(_))
    }
}

impl fmt::Display for Neighbor {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let dir = |s: &Shift| match s {
            Shift::Previous => "previous",
            Shift::Next => "next",
        };
        match self {
            Neighbor::Tile(code) => write!(f, "{code}"),
            Neighbor::Central => write!(f, "central tile"),
            Neighbor::Sector { shift, code } => write!(f, "{code} in the {} sector", dir(shift)),
            Neighbor::Strip { shift, code } => write!(f, "{code} in the {} strip", dir(shift)),
        }
    }
}

/// The neighbours of a tile, side 1 first, counterclockwise.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct NeighborSet {
    pub entries: Vec<Neighbor>,
}

/// A tile of the whole tiling: sector 0 is the central tile, sectors
/// `1..=S` hold white codes.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct TileAddress {
    pub sector: u32,
    pub code: Option<MetallicCode>,
}

impl TileAddress {
    pub fn central() -> Self {
        TileAddress { sector: 0, code: None }
    }

    pub fn new(sector: u32, code: MetallicCode) -> Self {
        assert!(sector >= 1, "sector 0 is the central tile");
        TileAddress { sector, code: Some(code) }
    }
}

impl fmt::Display for TileAddress {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match &self.code {
            None => write!(f, "central"),
            Some(code) => write!(f, "{}:{}", self.sector, code),
        }
    }
}

/// Father of a white-tree node.
///
/// Signature `2..=d`: drop the last digit, then add 1. Signature 0: drop the
/// last digit. Signature 1: the node is black (drop, then add 1) exactly when
/// the digits left of its run of 1s end with a nonzero digit; if that digit
/// is 0 or the run reaches the front, it is white (drop only).
pub fn father(code: &MetallicCode) -> Result<MetallicCode> {
    let mut visits = 0;
    father_counted(code, &mut visits)
}

fn father_counted(code: &MetallicCode, visits: &mut u64) -> Result<MetallicCode> {
    if code.is_zero() {
        return Err(Error::ZeroNode);
    }
    if code.digits() == [1] {
        return Err(Error::LeadingTile);
    }
    let digits = code.digits();
    let prefix = code.drop_last();
    *visits += digits.len() as u64;
    let bump = match code.signature() {
        0 => false,
        1 => {
            let mut i = digits.len() - 1;
            while i > 0 && digits[i - 1] == 1 {
                i -= 1;
                *visits += 1;
            }
            i > 0 && digits[i - 1] != 0
        }
        _ => true,
    };
    Ok(if bump { increment(&prefix) } else { prefix })
}

/// Father of a black-tree node: the rightmost node `1 0^k` of a level is the
/// successor of its father, every other node is a first-group son.
pub fn father_black(code: &MetallicCode) -> Result<MetallicCode> {
    if code.is_zero() {
        return Err(Error::ZeroNode);
    }
    if code.digits() == [1] {
        return Err(Error::LeadingTile);
    }
    let prefix = code.drop_last();
    Ok(if is_power_code(code) { prefix } else { increment(&prefix) })
}

fn is_power_code(code: &MetallicCode) -> bool {
    code.digits()[0] == 1 && code.digits()[1..].iter().all(|&x| x == 0)
}

fn ones(grade: Grade, count: usize) -> MetallicCode {
    MetallicCode::new(grade, vec![1; count]).expect("1^k is canonical")
}

/// `1^k 2`: the leftmost white node of level `k + 1`.
fn ones_then_two(grade: Grade, k: usize) -> MetallicCode {
    let mut digits = vec![1; k];
    digits.push(2);
    MetallicCode::new(grade, digits).expect("1^k 2 is canonical")
}

/// Position of a white-tree code on its level boundary, read from its shape.
enum Edge {
    /// `1^{L+1}`: the rightmost node of level `L` (the root for `L = 0`).
    Rightmost(usize),
    /// `1^{L-1} 2`: the leftmost node of level `L ≥ 1`.
    Leftmost(usize),
    Interior,
}

fn white_edge(code: &MetallicCode) -> Edge {
    let digits = code.digits();
    let (last, body) = digits.split_last().expect("nonempty");
    if body.iter().all(|&x| x == 1) {
        match last {
            1 => return Edge::Rightmost(digits.len() - 1),
            2 => return Edge::Leftmost(digits.len()),
            _ => {}
        }
    }
    Edge::Interior
}

fn son_codes(code: &MetallicCode, kind: TreeKind, node_type: NodeType) -> Result<Vec<MetallicCode>> {
    let groups = son_groups(code.grade(), kind, node_type);
    let before = decrement(code)?;
    let mut out = Vec::with_capacity(groups.len());
    for son in &groups.first {
        out.push(before.push(son.signature)?);
    }
    for son in &groups.last {
        out.push(code.push(son.signature)?);
    }
    Ok(out)
}

/// Neighbours of a tile of a sector, named by its white code.
///
/// {p,4}, white tile: father, its `p-2` sons, the leftmost son of `ν+1`.
/// {p,4}, black tile: father, `father-1`, its `p-3` sons, the leftmost son of `ν+1`.
/// {p+2,3} inserts `ν-1` after the father-side entries and appends `ν+1`.
/// Son codes are `[ν-1]·digit` for the first group and `[ν]·digit` for the
/// last; the leftmost son of `ν+1` is `[ν]1` for black and `wa` tiles and
/// `[ν]2` for `w0`/`w1` tiles.
pub fn neighbors_white(tiling: Tiling, code: &MetallicCode) -> Result<NeighborSet> {
    let grade = code.grade();
    let class = classify(TreeKind::White, code)?;
    let edge = white_edge(code);
    let is_root = code.digits() == [1];
    let mut entries = Vec::with_capacity(tiling.sides(grade) as usize);

    let father_code = if is_root { None } else { Some(father(code)?) };
    entries.push(match &father_code {
        None => Neighbor::Central,
        Some(f) => Neighbor::Tile(f.clone()),
    });
    let black = class.status() == Status::Black;
    if black {
        // father - 1; for the leftmost node of level L it is the rightmost
        // node of level L-1 in the previous sector.
        entries.push(match edge {
            Edge::Leftmost(level) => Neighbor::Sector { shift: Shift::Previous, code: ones(grade, level) },
            _ => Neighbor::Tile(decrement(father_code.as_ref().expect("black tiles have a father"))?),
        });
    }
    if tiling == Tiling::P23 {
        entries.push(match edge {
            _ if is_root => Neighbor::Sector { shift: Shift::Previous, code: MetallicCode::one(grade) },
            Edge::Leftmost(level) => Neighbor::Sector { shift: Shift::Previous, code: ones(grade, level + 1) },
            _ => Neighbor::Tile(decrement(code)?),
        });
    }
    entries.extend(son_codes(code, TreeKind::White, class.node_type)?.into_iter().map(Neighbor::Tile));
    match edge {
        Edge::Rightmost(level) => {
            entries.push(Neighbor::Sector { shift: Shift::Next, code: increment(code) });
            if tiling == Tiling::P23 {
                let next = if level == 0 { MetallicCode::one(grade) } else { ones_then_two(grade, level - 1) };
                entries.push(Neighbor::Sector { shift: Shift::Next, code: next });
            }
        }
        _ => {
            let digit = match class.node_type {
                NodeType::W0 | NodeType::W1 => 2,
                _ => 1,
            };
            entries.push(Neighbor::Tile(code.push(digit)?));
            if tiling == Tiling::P23 {
                entries.push(Neighbor::Tile(increment(code)));
            }
        }
    }
    debug_assert_eq!(entries.len(), tiling.sides(grade) as usize);
    Ok(NeighborSet { entries })
}

/// Neighbours of a tile of strip `ℬ_strip` (strip 0 is led by the sector's
/// leading tile), named by its black code.
///
/// Inside the strip the rows mirror [`neighbors_white`] with black-tree son
/// words; the leftmost son of `ν+1` is the successor `[ν]0`. Across strip
/// boundaries, with `j` the black level of the tile:
/// - the rightmost tile `1 0^j` meets, in the next strip, the leftmost tile
///   of level `j` (`[m_{j-1}+1]`, its last {p,4} side) and, in {p+2,3}, the
///   leftmost tile of level `j-1` (`[m_{j-2}+1]`);
/// - the leftmost tile of level `j` meets, in the previous strip, the
///   rightmost tiles `1 0^j` (its `father-1`) and `1 0^{j+1}` ({p+2,3} `ν-1`);
/// - the leading tile `1` is the son of the previous strip's leading tile and
///   the father of the next strip's leading tile (its last son side).
///
/// Strip 0's left edge is the sector's left edge, so its entries there name
/// white codes in the previous sector; every strip's leading tile borders the
/// next sector.
pub fn neighbors_black(tiling: Tiling, code: &MetallicCode, strip: u64) -> Result<NeighborSet> {
    let grade = code.grade();
    let class = classify(TreeKind::Black, code)?;
    let is_root = class.node_type == NodeType::BlackRoot;
    let level = level_of(grade, TreeKind::Black, &code.value()) as usize;
    let n = strip as usize;
    let first_strip = strip == 0;
    let mut entries = Vec::with_capacity(tiling.sides(grade) as usize);
    let previous_strip = |code: MetallicCode| Neighbor::Strip { shift: Shift::Previous, code };
    let next_strip = |code: MetallicCode| Neighbor::Strip { shift: Shift::Next, code };
    let previous_sector = |code: MetallicCode| Neighbor::Sector { shift: Shift::Previous, code };
    let next_sector = |code: MetallicCode| Neighbor::Sector { shift: Shift::Next, code };

    if is_root {
        // The leading tile M_n of the strip is a white tile of the sector.
        entries.push(if first_strip { Neighbor::Central } else { previous_strip(MetallicCode::one(grade)) });
        if tiling == Tiling::P23 {
            entries.push(if first_strip {
                previous_sector(MetallicCode::one(grade))
            } else {
                previous_strip(MetallicCode::power(grade, 1))
            });
        }
        entries.extend(son_codes(code, TreeKind::Black, class.node_type)?.into_iter().map(Neighbor::Tile));
        entries.push(next_strip(MetallicCode::one(grade)));
        entries.push(next_sector(ones_then_two(grade, n)));
        if tiling == Tiling::P23 {
            entries.push(next_sector(if n == 0 { MetallicCode::one(grade) } else { ones_then_two(grade, n - 1) }));
        }
        debug_assert_eq!(entries.len(), tiling.sides(grade) as usize);
        return Ok(NeighborSet { entries });
    }

    let father_code = father_black(code)?;
    entries.push(Neighbor::Tile(father_code.clone()));
    let leftmost = class.node_type == NodeType::B1;
    let rightmost = class.node_type == NodeType::W0;
    if class.status() == Status::Black {
        entries.push(if !leftmost {
            Neighbor::Tile(decrement(&father_code)?)
        } else if first_strip {
            previous_sector(ones(grade, level))
        } else {
            previous_strip(MetallicCode::power(grade, level))
        });
    }
    if tiling == Tiling::P23 {
        entries.push(if !leftmost {
            Neighbor::Tile(decrement(code)?)
        } else if first_strip {
            previous_sector(ones(grade, level + 1))
        } else {
            previous_strip(MetallicCode::power(grade, level + 1))
        });
    }
    entries.extend(son_codes(code, TreeKind::Black, class.node_type)?.into_iter().map(Neighbor::Tile));
    if rightmost {
        entries.push(next_strip(increment(&MetallicCode::power(grade, level - 1))));
        if tiling == Tiling::P23 {
            let next = if level == 1 {
                MetallicCode::one(grade)
            } else {
                increment(&MetallicCode::power(grade, level - 2))
            };
            entries.push(next_strip(next));
        }
    } else {
        entries.push(Neighbor::Tile(code.push(0)?));
        if tiling == Tiling::P23 {
            entries.push(Neighbor::Tile(increment(code)));
        }
    }
    debug_assert_eq!(entries.len(), tiling.sides(grade) as usize);
    Ok(NeighborSet { entries })
}

/// Neighbours of a tile of the whole tiling, as absolute addresses.
pub fn neighbors_of_tile(grade: Grade, tiling: Tiling, tile: &TileAddress) -> Result<Vec<TileAddress>> {
    let sectors = tiling.sides(grade);
    let Some(code) = &tile.code else {
        return Ok((1..=sectors).map(|s| TileAddress::new(s, MetallicCode::one(grade))).collect());
    };
    let shifted = |shift: Shift| match shift {
        Shift::Previous => (tile.sector + sectors - 2) % sectors + 1,
        Shift::Next => tile.sector % sectors + 1,
    };
    neighbors_white(tiling, code)?
        .entries
        .into_iter()
        .map(|entry| {
            Ok(match entry {
                Neighbor::Tile(c) => TileAddress::new(tile.sector, c),
                Neighbor::Central => TileAddress::central(),
                Neighbor::Sector { shift, code } => TileAddress::new(shifted(shift), code),
                Neighbor::Strip { .. } => unreachable!("white neighbours never name strips"),
            })
        })
        .collect()
}

/// How a path step names its node.
#[derive(Debug, Clone, PartialEq, Eq)]
enum Locator {
    /// `value(first len digits of the target code) + offset`.
    Prefix { len: usize, offset: u32 },
    Code(MetallicCode),
    Number(BigUint),
}

/// One node on a path: its signature, type and (when resolved) number.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct PathStep {
    pub signature: u32,
    pub node_type: NodeType,
    locator: Locator,
}

impl PathStep {
    pub fn status(&self) -> Status {
        self.node_type.status()
    }
}

/// The path from the leading tile (excluded) down to a target node.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct PathTrace {
    pub kind: TreeKind,
    target: MetallicCode,
    pub steps: Vec<PathStep>,
    /// Digits read or written while computing the path.
    pub digit_visits: u64,
}

impl PathTrace {
    /// Level of the target (number of steps below the leading tile).
    pub fn level(&self) -> usize {
        self.steps.len()
    }

    /// Node numbers along the path, leading tile (1) first, target last.
    pub fn numbers(&self) -> Vec<BigUint> {
        let mut out = vec![BigUint::one()];
        for step in &self.steps {
            out.push(match &step.locator {
                Locator::Prefix { len, offset } => decode(self.target.grade(), &self.target.digits()[..*len]) + *offset,
                Locator::Code(code) => code.value(),
                Locator::Number(n) => n.clone(),
            });
        }
        out
    }
}

fn trace_from_walk(kind: TreeKind, code: &MetallicCode, steps: Vec<WalkNode>, visits: u64) -> PathTrace {
    let steps = steps
        .into_iter()
        .map(|node| PathStep {
            signature: node.signature,
            node_type: node.node_type,
            locator: Locator::Prefix { len: node.prefix_len, offset: node.offset },
        })
        .collect();
    PathTrace { kind, target: code.clone(), steps, digit_visits: visits }
}

/// Path of a white-tree node by repeated fathers, from the target upwards.
///
/// Each father costs a copy of the code plus, for signature 1, a scan over the
/// run of 1s; on `1^k` the total work is quadratic in `k`.
pub fn path_bottom_up(code: &MetallicCode) -> Result<PathTrace> {
    if code.is_zero() {
        return Err(Error::ZeroNode);
    }
    let mut visits = 0u64;
    let mut chain = vec![code.clone()];
    while chain.last().expect("nonempty").digits() != [1] {
        let next = father_counted(chain.last().expect("nonempty"), &mut visits)?;
        chain.push(next);
    }
    chain.reverse();
    // Types follow from the root down: a son whose code extends its father's
    // is in the last group, otherwise in the first.
    let grade = code.grade();
    let mut node_type = NodeClass::root(TreeKind::White).node_type;
    let mut steps = Vec::with_capacity(chain.len() - 1);
    for pair in chain.windows(2) {
        let (parent, son) = (&pair[0], &pair[1]);
        visits += son.len() as u64;
        let groups = son_groups(grade, TreeKind::White, node_type);
        let group = if son.drop_last() == *parent { &groups.last } else { &groups.first };
        let spec = group
            .iter()
            .find(|s| s.signature == son.signature())
            .ok_or(Error::Inconsistent { digit: son.signature(), position: son.len() - 1 })?;
        node_type = spec.node_type;
        steps.push(PathStep { signature: spec.signature, node_type, locator: Locator::Code(son.clone()) });
    }
    Ok(PathTrace { kind: TreeKind::White, target: code.clone(), steps, digit_visits: visits })
}

/// Path of a white-tree node by the linear top-down walk.
pub fn path_top_down(code: &MetallicCode) -> Result<PathTrace> {
    let w = walk(TreeKind::White, code)?;
    Ok(trace_from_walk(TreeKind::White, code, w.steps, w.visits))
}

/// Path of a black-tree node from the strip's leading tile, by the linear
/// top-down walk.
pub fn path_black(code: &MetallicCode) -> Result<PathTrace> {
    let w = walk(TreeKind::Black, code)?;
    Ok(trace_from_walk(TreeKind::Black, code, w.steps, w.visits))
}

/// Location of a white-tree node inside the strip decomposition of its sector.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct StripLocation {
    /// Index `n` of the strip `ℬ_n`, whose leading tile is `M_n`.
    pub strip: u64,
    /// Black-tree number of the node inside its strip.
    pub black_number: BigUint,
}

/// Finds the strip holding white node `number`.
///
/// On level `L` the subtree of `M_n` owns the rightmost `m_{L-n}` nodes and
/// is a copy of the white tree, whose level `j = L-n` node `x` sits at
/// `x + M_L - M_j`; removing the subtree of `M_{n+1}` leaves the strip, whose
/// black numbering is `x - M_{j-2}` (no shift for `j < 2`).
pub fn locate_strip(grade: Grade, number: &BigUint) -> StripLocation {
    let level = level_of(grade, TreeKind::White, number) as i64;
    let big_m = |k: i64| seq_big_m(grade, k);
    let rightmost = big_m(level);
    // Largest n whose subtree (the rightmost m_{L-n} = M_{L-n} - M_{L-n-1} nodes) holds ν.
    let mut strip = 0;
    for n in (0..=level).rev() {
        let j = level - n;
        if number + big_m(j) > &rightmost + big_m(j - 1) {
            strip = n;
            break;
        }
    }
    let j = level - strip;
    let x = number + big_m(j) - &rightmost;
    let black_number = if j >= 2 { x - big_m(j - 2) } else { x };
    StripLocation { strip: strip as u64, black_number }
}

/// Inverse of [`locate_strip`]: white number of black node `black_number` of strip `strip`.
pub fn strip_to_white_number(grade: Grade, strip: u64, black_number: &BigUint) -> BigUint {
    let j = level_of(grade, TreeKind::Black, black_number) as i64;
    let big_m = |k: i64| seq_big_m(grade, k);
    let x = if j >= 2 { black_number + big_m(j - 2) } else { black_number.clone() };
    x + big_m(strip as i64 + j) - big_m(j)
}

/// Path of a white-tree node through the strip decomposition: down the
/// rightmost branch to the leading tile `M_n` of the node's strip, then the
/// black-tree path inside the strip, renumbered into the white tree.
pub fn path_via_strips(code: &MetallicCode) -> Result<PathTrace> {
    if code.is_zero() {
        return Err(Error::ZeroNode);
    }
    let grade = code.grade();
    let location = locate_strip(grade, &code.value());
    let inner = path_black(&encode(grade, &location.black_number))?;
    let mut visits = inner.digit_visits;
    let mut numbers: Vec<BigUint> = (1..=location.strip as i64).map(|k| seq_big_m(grade, k)).collect();
    for black in inner.numbers().iter().skip(1) {
        numbers.push(strip_to_white_number(grade, location.strip, black));
    }
    let mut node_type = NodeClass::root(TreeKind::White).node_type;
    let mut parent = MetallicCode::one(grade);
    let mut steps = Vec::with_capacity(numbers.len());
    for number in numbers {
        let son = encode(grade, &number);
        visits += son.len() as u64;
        let groups = son_groups(grade, TreeKind::White, node_type);
        let group = if son.drop_last() == parent { &groups.last } else { &groups.first };
        let spec = group
            .iter()
            .find(|s| s.signature == son.signature())
            .ok_or(Error::Inconsistent { digit: son.signature(), position: son.len() - 1 })?;
        node_type = spec.node_type;
        steps.push(PathStep { signature: spec.signature, node_type, locator: Locator::Number(number) });
        parent = son;
    }
    Ok(PathTrace { kind: TreeKind::White, target: code.clone(), steps, digit_visits: visits })
}
