//! Hexagonal picture languages, the symmetry group of the hexagon, and
//! boustrophedon / returning scanning automata over hexagonal pictures.

pub mod automata;
pub mod hexgrid;
pub mod langtools;
pub mod symmetry;
pub mod transforms;

pub use automata::{
    AutomatonBuilder, AutomatonError, AutomatonKind, DirectionMode, HexAutomaton, Partition,
    StateId,
};
pub use hexgrid::{CellCoord, GridError, HexPicture, HexSize, ScanPlan, Symbol};
pub use symmetry::{apply_op, compose, invert, normal_form, transform_size, OpWord, SymmetryOp};
