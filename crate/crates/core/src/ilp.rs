//! Integer program for the maximum arc: one binary per cell, at most two
//! selected cells on every line, maximize the number selected.

use std::fmt::Write as _;
use std::io;

use crate::geometry::enumerate_lines;
use crate::modular::{Modulus, Point};

/// Terms per output line in the LP text.
const WRAP: usize = 10;

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct IlpModel {
    n: u32,
    /// `x_<x>_<y>` in lexicographic `(x, y)` order.
    variables: Vec<String>,
    /// Variable indices of each line, in line-table order.
    rows: Vec<Vec<usize>>,
}

impl IlpModel {
    pub fn modulus(&self) -> u32 {
        self.n
    }

    pub fn variables(&self) -> &[String] {
        &self.variables
    }

    pub fn rows(&self) -> &[Vec<usize>] {
        &self.rows
    }

    /// Right-hand side shared by every row.
    pub fn capacity(&self) -> usize {
        2
    }

    /// Whether the 0/1 assignment selecting `points` satisfies every row.
    pub fn is_feasible(&self, points: &[Point]) -> bool {
        let mut chosen = vec![false; self.variables.len()];
        for p in points {
            chosen[variable_index(self.n, *p)] = true;
        }
        self.rows.iter().all(|r| r.iter().filter(|&&v| chosen[v]).count() <= self.capacity())
    }

    /// CPLEX LP text.
    pub fn to_lp(&self) -> String {
        let mut out = format!("\\ Maximum arc in Z_{0} x Z_{0}\n", self.n);
        out.push_str("Maximize\n");
        write_sum(&mut out, " obj:", (0..self.variables.len()).map(|v| self.variables[v].as_str()));
        out.push('\n');
        out.push_str("Subject To\n");
        for (i, row) in self.rows.iter().enumerate() {
            write_sum(&mut out, &format!(" l{i}:"), row.iter().map(|&v| self.variables[v].as_str()));
            let _ = writeln!(out, " <= {}", self.capacity());
        }
        out.push_str("Binaries\n");
        for chunk in self.variables.chunks(WRAP) {
            let _ = writeln!(out, " {}", chunk.join(" "));
        }
        out.push_str("End\n");
        out
    }
}

fn variable_index(n: u32, p: Point) -> usize {
    (p.x * n + p.y) as usize
}

fn write_sum<'a>(out: &mut String, label: &str, terms: impl Iterator<Item = &'a str>) {
    out.push_str(label);
    for (i, t) in terms.enumerate() {
        if i > 0 && i % WRAP == 0 {
            out.push_str("\n   ");
        }
        if i == 0 {
            let _ = write!(out, " {t}");
        } else {
            let _ = write!(out, " + {t}");
        }
    }
}

pub fn build_model(n: Modulus) -> IlpModel {
    let m = n.get();
    let mut cells: Vec<Point> = n.points().collect();
    cells.sort();
    let variables = cells.iter().map(|p| format!("x_{}_{}", p.x, p.y)).collect();
    let rows = enumerate_lines(n)
        .lines()
        .iter()
        .map(|line| {
            let mut r: Vec<usize> = line.points().iter().map(|&p| variable_index(m, p)).collect();
            r.sort_unstable();
            r
        })
        .collect();
    IlpModel { n: m, variables, rows }
}

pub fn write_lp(model: &IlpModel, sink: &mut impl io::Write) -> io::Result<()> {
    sink.write_all(model.to_lp().as_bytes())
}
