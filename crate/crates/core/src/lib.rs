pub mod analytics;
pub mod cli;
pub mod corpus;
pub mod model;
pub mod query;
pub mod reasoner;
pub mod turtle;
