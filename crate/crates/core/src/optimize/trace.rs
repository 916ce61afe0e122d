use std::io::Write;

use serde::{Deserialize, Serialize};

use crate::error::Result;

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct Checkpoint {
    pub iteration: usize,
    /// Value of the optimized scalarization (for baselines, the mean over
    /// slots; for SoM, the sum-of-minimum objective).
    pub value: f64,
    pub worst: f64,
    pub average: f64,
}

/// Checkpoints with strictly increasing iteration indices.
#[derive(Debug, Clone, Default, PartialEq, Serialize, Deserialize)]
pub struct Trace {
    checkpoints: Vec<Checkpoint>,
}

impl Trace {
    pub fn new() -> Self {
        Self::default()
    }

    pub fn push(&mut self, checkpoint: Checkpoint) {
        if let Some(last) = self.checkpoints.last() {
            assert!(
                checkpoint.iteration > last.iteration,
                "trace iterations must increase: {} after {}",
                checkpoint.iteration,
                last.iteration
            );
        }
        self.checkpoints.push(checkpoint);
    }

    pub fn checkpoints(&self) -> &[Checkpoint] {
        &self.checkpoints
    }

    pub fn last(&self) -> Option<&Checkpoint> {
        self.checkpoints.last()
    }

    pub fn len(&self) -> usize {
        self.checkpoints.len()
    }

    pub fn is_empty(&self) -> bool {
        self.checkpoints.is_empty()
    }

    pub fn write_csv<W: Write>(&self, writer: W) -> Result<()> {
        let mut w = csv::Writer::from_writer(writer);
        w.write_record(["iteration", "value", "worst", "average"])?;
        for c in &self.checkpoints {
            w.write_record([
                c.iteration.to_string(),
                format!("{:e}", c.value),
                format!("{:e}", c.worst),
                format!("{:e}", c.average),
            ])?;
        }
        w.flush()?;
        Ok(())
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn cp(iteration: usize) -> Checkpoint {
        Checkpoint {
            iteration,
            value: 1.5,
            worst: 2.0,
            average: 0.25,
        }
    }

    #[test]
    fn csv_export() {
        let mut t = Trace::new();
        t.push(cp(0));
        t.push(cp(10));
        let mut buf = Vec::new();
        t.write_csv(&mut buf).unwrap();
        assert_eq!(
            String::from_utf8(buf).unwrap(),
            "iteration,value,worst,average\n0,1.5e0,2e0,2.5e-1\n10,1.5e0,2e0,2.5e-1\n"
        );
    }

    #[test]
    #[should_panic(expected = "must increase")]
    fn rejects_repeated_iterations() {
        let mut t = Trace::new();
        t.push(cp(3));
        t.push(cp(3));
    }
}
