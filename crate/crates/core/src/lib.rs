pub mod bookdraw;
pub mod checker;
pub mod corpus;
pub mod graph;
pub mod mso;
pub mod oracle;
pub mod pagechar;
pub mod report;
pub mod treewidth;

pub use graph::{EdgeSet, Graph, GraphError, VertexSet};
