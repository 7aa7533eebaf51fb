pub mod characterise;
pub mod frontier;
pub mod gen;
pub mod interp;
pub mod learn;
pub mod ontology;
pub mod reason;
pub mod syntax;
