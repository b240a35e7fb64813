//! Reducible intervals around a time, their pinch points, strong intervals,
//! and the exact finite maps of single bubbles.

mod bubble;
mod pinch;

pub use bubble::{pinch_increments, root_sample, strong_bubble_extent, Bubble, PinchIncrements, RootSample};
pub use pinch::{
    first_strong_index, is_strong, pinch_sequence, strong_pinch_sequence, PinchSequence, StrongPinchSequence,
    TauObservation,
};
