use std::io::{BufRead, Write};

use serde::{Deserialize, Serialize};

use super::map::DecoratedMap;
use crate::error::{Error, Result};
use crate::word::Burger;

/// One line of the JSON-lines map document.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
#[serde(tag = "type", rename_all = "snake_case")]
pub enum MapLine {
    Header {
        format: String,
        lo: i64,
        len: usize,
        closed: bool,
        root: Option<u32>,
        vertices: usize,
        dual_vertices: usize,
        edges: usize,
        word: String,
    },
    Vertex {
        id: u32,
        degree: usize,
        dirty: bool,
    },
    Edge {
        id: u32,
        burger_time: i64,
        order_time: i64,
        u: u32,
        v: u32,
        du: u32,
        dv: u32,
        kind: char,
        tree: bool,
        g: bool,
        flipped: bool,
    },
    Tutte {
        time: i64,
        red: u32,
        blue: u32,
    },
}

pub const MAP_FORMAT: &str = "hcmap-decorated-map/1";

/// The document as a list of lines, header first, then vertices, edges and
/// Tutte edges in id order.
pub fn map_lines(map: &DecoratedMap) -> Vec<MapLine> {
    let mut out = Vec::with_capacity(1 + map.num_vertices() + map.num_edges() + map.num_tutte_edges());
    out.push(MapLine::Header {
        format: MAP_FORMAT.to_string(),
        lo: map.lo,
        len: map.len(),
        closed: map.closed,
        root: map.root(),
        vertices: map.num_vertices(),
        dual_vertices: map.num_dual_vertices(),
        edges: map.num_edges(),
        word: crate::word::word_to_string(&map.letters),
    });
    for v in 0..map.num_vertices() as u32 {
        out.push(MapLine::Vertex { id: v, degree: map.degree(v), dirty: map.is_dirty(v) });
    }
    for (i, e) in map.edges.iter().enumerate() {
        out.push(MapLine::Edge {
            id: i as u32,
            burger_time: map.lo + e.s as i64,
            order_time: map.lo + e.t as i64,
            u: e.u,
            v: e.v,
            du: e.du,
            dv: e.dv,
            kind: match e.kind {
                Burger::Hamburger => 'a',
                Burger::Cheeseburger => 'b',
            },
            tree: e.in_tree(),
            g: e.in_g(),
            flipped: e.flexible,
        });
    }
    for k in 0..map.num_tutte_edges() {
        let (red, blue) = map.tutte_edge(k);
        out.push(MapLine::Tutte { time: map.lo + k as i64, red, blue });
    }
    out
}

pub fn write_map<W: Write>(map: &DecoratedMap, mut w: W) -> Result<()> {
    for line in map_lines(map) {
        serde_json::to_writer(&mut w, &line)?;
        w.write_all(b"\n")?;
    }
    Ok(())
}

pub fn read_map_lines<R: BufRead>(r: R) -> Result<Vec<MapLine>> {
    let mut out = Vec::new();
    for line in r.lines() {
        let line = line?;
        if line.trim().is_empty() {
            continue;
        }
        out.push(serde_json::from_str(&line)?);
    }
    match out.first() {
        Some(MapLine::Header { format, .. }) if format == MAP_FORMAT => Ok(out),
        _ => Err(Error::Io("missing or unknown map header".into())),
    }
}
