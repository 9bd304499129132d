//! Schematic layered diagrams of the metallic trees.
//!
//! Colours: black nodes red, left-type white nodes (`wa`) blue, right-type
//! white nodes (`w0`, `w1`) green; nodes whose code ends in 0 (preferred sons
//! in the white tree, successors in the black tree) get a red border.

use std::fmt::Write;

use metallic::oracle::{build, codes_by_chain};
use metallic::trees::classify;
use metallic::{Grade, MetallicCode, NodeType, Status, TreeKind};

/// One drawn node.
struct Item {
    number: usize,
    level: u32,
    father: Option<usize>,
    code: MetallicCode,
    node_type: NodeType,
}

/// A tree laid out level by level.
pub struct Diagram {
    grade: Grade,
    kind: TreeKind,
    items: Vec<Item>,
    /// Node numbers per level.
    rows: Vec<Vec<usize>>,
}

const RED: &str = "#d62728";
const BLUE: &str = "#1f77b4";
const GREEN: &str = "#2ca02c";

impl Diagram {
    pub fn build(grade: Grade, kind: TreeKind, levels: u32) -> metallic::Result<Self> {
        let snapshot = build(grade, kind, levels)?;
        let codes = codes_by_chain(&snapshot);
        let mut items = Vec::with_capacity(snapshot.len());
        for record in snapshot.nodes() {
            let code = codes[record.number].clone();
            let node_type = classify(kind, &code)?.node_type;
            items.push(Item { number: record.number, level: record.level, father: record.father, code, node_type });
        }
        let rows = (0..=levels).map(|level| snapshot.level_range(level).collect()).collect();
        Ok(Diagram { grade, kind, items, rows })
    }

    fn fill(item: &Item) -> &'static str {
        match item.node_type {
            NodeType::Wa => BLUE,
            NodeType::W0 | NodeType::W1 => GREEN,
            _ => RED,
        }
    }

    fn border(item: &Item) -> &'static str {
        if item.number > 1 && item.code.signature() == 0 {
            RED
        } else {
            "#000000"
        }
    }

    pub fn to_dot(&self) -> String {
        let mut out = String::new();
        let _ = writeln!(out, "digraph metallic_{}_p{} {{", self.kind, self.grade.p());
        let _ = writeln!(out, "  node [shape=circle, style=filled, fontsize=8];");
        for item in &self.items {
            let status = match item.node_type.status() {
                Status::Black => "b",
                Status::White => "w",
            };
            let _ = writeln!(
                out,
                "  n{} [label=\"{}\\n{}\", fillcolor=\"{}\", color=\"{}\", penwidth={}, tooltip=\"{} {}\"];",
                item.number,
                item.number,
                item.code,
                Self::fill(item),
                Self::border(item),
                if Self::border(item) == RED { 3 } else { 1 },
                status,
                item.node_type,
            );
        }
        for item in &self.items {
            if let Some(f) = item.father {
                let _ = writeln!(out, "  n{f} -> n{};", item.number);
            }
        }
        out.push_str("}\n");
        out
    }

    pub fn to_svg(&self) -> String {
        const DX: f64 = 28.0;
        const DY: f64 = 70.0;
        const R: f64 = 10.0;
        let widest = self.rows.iter().map(Vec::len).max().unwrap_or(1) as f64;
        let width = widest * DX + 2.0 * DX;
        let height = self.rows.len() as f64 * DY + DY;
        let mut position = vec![(0.0, 0.0); self.items.len() + 1];
        for (level, row) in self.rows.iter().enumerate() {
            let step = (width - 2.0 * DX) / row.len() as f64;
            for (i, &n) in row.iter().enumerate() {
                position[n] = (DX + step * (i as f64 + 0.5), DY * (level as f64 + 0.75));
            }
        }
        let mut out = String::new();
        let _ = writeln!(
            out,
            "<svg xmlns=\"http://www.w3.org/2000/svg\" width=\"{width:.0}\" height=\"{height:.0}\" viewBox=\"0 0 {width:.0} {height:.0}\">"
        );
        let _ = writeln!(out, "<title>{} metallic tree, p = {}</title>", self.kind, self.grade.p());
        for item in &self.items {
            if let Some(f) = item.father {
                let ((x1, y1), (x2, y2)) = (position[f], position[item.number]);
                let _ = writeln!(out, "<line x1=\"{x1:.1}\" y1=\"{y1:.1}\" x2=\"{x2:.1}\" y2=\"{y2:.1}\" stroke=\"#888888\"/>");
            }
        }
        for item in &self.items {
            let (x, y) = position[item.number];
            let _ = writeln!(
                out,
                "<g class=\"node {}\"><title>{} [{}] level {}</title><circle cx=\"{x:.1}\" cy=\"{y:.1}\" r=\"{R}\" fill=\"{}\" stroke=\"{}\" stroke-width=\"{}\"/><text x=\"{x:.1}\" y=\"{:.1}\" font-size=\"7\" text-anchor=\"middle\">{}</text></g>",
                item.node_type,
                item.number,
                item.code,
                item.level,
                Self::fill(item),
                Self::border(item),
                if Self::border(item) == RED { 3 } else { 1 },
                y + 2.5,
                item.number,
            );
        }
        out.push_str("</svg>\n");
        out
    }
}
