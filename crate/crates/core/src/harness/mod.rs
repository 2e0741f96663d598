//! Experiment orchestration placeholder.
