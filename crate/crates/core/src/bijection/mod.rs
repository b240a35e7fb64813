//! From a word to the decorated map: arcs, faces, the map with its flips,
//! canonical codes and exact small-volume enumeration.

mod arcs;
mod canonical;
mod enumerate;
mod faces;
mod map;
mod serialize;

pub use arcs::{build_arc_diagram, Arc, ArcDiagram, Side};
pub use canonical::{canonical_code, rotation_system, Rotation};
pub use enumerate::{finite_volume_law_check, reducible_words, sqrt_q_rational, LawRow, LawTable, MAX_ENUMERATION_N};
pub use faces::{build_face_classes, FaceClasses};
pub use map::{build_decorated_map, build_finite_map, DecoratedMap, Diagonal, EdgeSet, FlipRecord, MapEdge};
pub use serialize::{map_lines, read_map_lines, write_map, MapLine, MAP_FORMAT};
