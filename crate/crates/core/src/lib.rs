//! Bounded two-buffer simulation games between Büchi automata, decided by
//! reduction to fair simulation (index-3 parity games), and their use as a
//! sound approximation of inclusion between relations recognised by 2-head
//! Büchi transducers.

pub mod automaton;
pub mod error;
pub mod format;
pub mod gen;
pub mod omega;
pub mod parity;
pub mod projection;
pub mod sim;
pub mod transducer;

pub use automaton::{Alphabet, AutomatonBuilder, BufferId, BuchiAutomaton, Lasso, Letter, SigmaMap, State};
pub use error::{Error, Result};
pub use sim::{Capacities, Method};
pub use transducer::{RelationVerdict, Transducer};
