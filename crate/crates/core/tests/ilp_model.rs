//! The LP model's optimum, found by searching the model alone, equals the
//! solver's maximum arc size.

use torus_arcs::ilp::{build_model, IlpModel};
use torus_arcs::solver::{solve, SearchOptions};
use torus_arcs::Modulus;

/// Groups rows into families of pairwise disjoint rows covering every
/// variable; each family caps the objective at `capacity` per row.
fn partitions(model: &IlpModel) -> Vec<Vec<usize>> {
    let vars = model.variables().len();
    let mut families: Vec<Vec<usize>> = Vec::new();
    let mut used = vec![false; model.rows().len()];
    for start in 0..model.rows().len() {
        if used[start] {
            continue;
        }
        let mut covered = vec![false; vars];
        let mut family = Vec::new();
        for (r, row) in model.rows().iter().enumerate().skip(start) {
            if !used[r] && row.iter().all(|&v| !covered[v]) {
                row.iter().for_each(|&v| covered[v] = true);
                family.push(r);
            }
        }
        if covered.iter().all(|&c| c) {
            family.iter().for_each(|&r| used[r] = true);
            families.push(family);
        }
    }
    families
}

struct ModelSearch<'a> {
    model: &'a IlpModel,
    rows_of: Vec<Vec<usize>>,
    families: Vec<Vec<usize>>,
    load: Vec<usize>,
    best: usize,
}

impl ModelSearch<'_> {
    fn can_take(&self, v: usize) -> bool {
        self.rows_of[v].iter().all(|&r| self.load[r] < self.model.capacity())
    }

    fn bound(&self, chosen: usize, from: usize) -> usize {
        let cap = self.model.capacity();
        let open: Vec<bool> = (0..self.model.variables().len()).map(|v| v >= from && self.can_take(v)).collect();
        let mut bound = chosen + open.iter().filter(|&&o| o).count();
        for family in &self.families {
            let b: usize = family
                .iter()
                .map(|&r| {
                    let extra = self.model.rows()[r].iter().filter(|&&v| open[v]).count();
                    (self.load[r] + extra).min(cap)
                })
                .sum();
            bound = bound.min(b);
        }
        bound
    }

    fn go(&mut self, from: usize, chosen: usize) {
        self.best = self.best.max(chosen);
        if self.bound(chosen, from) <= self.best {
            return;
        }
        for v in from..self.model.variables().len() {
            if self.can_take(v) {
                self.rows_of[v].clone().iter().for_each(|&r| self.load[r] += 1);
                self.go(v + 1, chosen + 1);
                self.rows_of[v].clone().iter().for_each(|&r| self.load[r] -= 1);
                if self.bound(chosen, v + 1) <= self.best {
                    return;
                }
            }
        }
    }
}

fn model_optimum(model: &IlpModel) -> usize {
    let mut rows_of = vec![Vec::new(); model.variables().len()];
    for (r, row) in model.rows().iter().enumerate() {
        row.iter().for_each(|&v| rows_of[v].push(r));
    }
    let mut s = ModelSearch { model, rows_of, families: partitions(model), load: vec![0; model.rows().len()], best: 0 };
    // Rows are closed under translation, so some optimum uses x_0_0.
    let v0 = model.variables().iter().position(|v| v == "x_0_0").unwrap();
    assert_eq!(v0, 0);
    s.rows_of[v0].clone().iter().for_each(|&r| s.load[r] += 1);
    s.go(1, 1);
    s.best
}

fn translate(name: &str, n: u32, dx: u32, dy: u32) -> String {
    let mut parts = name.split('_').skip(1).map(|s| s.parse::<u32>().unwrap());
    let (x, y) = (parts.next().unwrap(), parts.next().unwrap());
    format!("x_{}_{}", (x + dx) % n, (y + dy) % n)
}

#[test]
fn rows_are_translation_invariant() {
    for n in 2..=8u32 {
        let model = build_model(Modulus::new(n as i64).unwrap());
        let rows: std::collections::BTreeSet<Vec<String>> = model
            .rows()
            .iter()
            .map(|r| {
                let mut names: Vec<String> = r.iter().map(|&v| model.variables()[v].clone()).collect();
                names.sort();
                names
            })
            .collect();
        for (dx, dy) in [(1, 0), (0, 1)] {
            for row in &rows {
                let mut moved: Vec<String> = row.iter().map(|v| translate(v, n, dx, dy)).collect();
                moved.sort();
                assert!(rows.contains(&moved), "n={n}");
            }
        }
    }
}

#[test]
fn model_optimum_is_tau() {
    for n in 2..=8 {
        let md = Modulus::new(n).unwrap();
        let model = build_model(md);
        assert!(partitions(&model).len() >= 3);
        let tau = solve(md, &SearchOptions::default()).unwrap().best.len();
        assert_eq!(model_optimum(&model), tau, "n={n}");
    }
}
