use std::time::{Duration, Instant};

use crate::error::{Error, Result};

/// Resource caps shared by the solver and the complex builders.
#[derive(Clone, Debug)]
pub struct Budget {
    pub max_vertices: usize,
    pub max_faces: usize,
    /// Search nodes for the exact chromatic solver.
    pub max_nodes: u64,
    pub deadline: Option<Instant>,
}

impl Default for Budget {
    fn default() -> Self {
        Budget {
            max_vertices: 20_000,
            max_faces: 2_000_000,
            max_nodes: u64::MAX,
            deadline: Some(Instant::now() + Duration::from_secs(600)),
        }
    }
}

impl Budget {
    pub fn unlimited() -> Self {
        Budget {
            max_vertices: usize::MAX,
            max_faces: usize::MAX,
            max_nodes: u64::MAX,
            deadline: None,
        }
    }

    pub fn with_timeout(mut self, timeout: Duration) -> Self {
        self.deadline = Some(Instant::now() + timeout);
        self
    }

    pub fn check_vertices(&self, count: usize, what: &str) -> Result<()> {
        if count > self.max_vertices {
            return Err(Error::budget(format!(
                "{what}: {count} vertices > cap {}",
                self.max_vertices
            )));
        }
        Ok(())
    }

    pub fn check_faces(&self, count: usize, what: &str) -> Result<()> {
        if count > self.max_faces {
            return Err(Error::budget(format!(
                "{what}: more than {} faces",
                self.max_faces
            )));
        }
        Ok(())
    }

    pub fn expired(&self) -> bool {
        self.deadline.is_some_and(|d| Instant::now() >= d)
    }
}
