pub mod cartan;
pub mod error;
pub mod graph;
pub mod path;
pub mod perfect;
pub mod signature;
pub mod slice;
pub mod verify;
pub mod wall;

pub use cartan::{CartanData, Weight};
pub use error::{Error, Result};
pub use graph::{
    generate, generate_with, CrystalGraph, Divergence, Edge, GraphSpec, Node, Payload, Realization,
};
pub use path::{path_to_wall, path_to_wall_with_budget, wall_to_path, PathState};
pub use perfect::{PerfectCrystal, PerfectElement};
pub use signature::{Mark, Origin, Signature, SignatureEntry};
pub use slice::{Layer, Pattern, PatternSlot, Role, Slice, SliceRecord, Split, SplitSlice};
pub use wall::{ground_column, SplitProfile, Wall};
