//! Balls in Cayley graphs of finitely presented groups.
//!
//! Reduced words up to length `radius + max relator length` form a tree.
//! Relators traced from every node identify tree nodes (with coincidences
//! propagated through the edge tables, as in Todd–Coxeter enumeration);
//! the ball is then read off by a breadth-first search in shortlex order.

use std::collections::VecDeque;

use serde::{Deserialize, Serialize};

use super::graph::Graph;
use crate::error::{Error, Result};

pub const DEFAULT_ELEMENT_CAP: usize = 500_000;

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct GroupPresentation {
    pub generators: Vec<String>,
    pub relators: Vec<String>,
}

/// A letter is `2·g` for generator `g` and `2·g + 1` for its inverse.
type Letter = usize;

fn inverse(l: Letter) -> Letter {
    l ^ 1
}

impl GroupPresentation {
    pub fn new(generators: &[&str], relators: &[&str]) -> Result<Self> {
        let p = GroupPresentation {
            generators: generators.iter().map(|s| s.to_string()).collect(),
            relators: relators.iter().map(|s| s.to_string()).collect(),
        };
        p.words()?;
        Ok(p)
    }

    fn letter(&self, c: char) -> Result<Letter> {
        let lower = c.to_ascii_lowercase();
        let g = self
            .generators
            .iter()
            .position(|s| s.chars().eq(std::iter::once(lower)))
            .ok_or_else(|| {
                Error::InvalidPresentation(format!("letter `{c}` is not a generator or inverse"))
            })?;
        Ok(2 * g + usize::from(c.is_ascii_uppercase()))
    }

    /// Validates the presentation and returns relators as letter words.
    fn words(&self) -> Result<Vec<Vec<Letter>>> {
        for (i, g) in self.generators.iter().enumerate() {
            let mut cs = g.chars();
            match (cs.next(), cs.next()) {
                (Some(c), None) if c.is_ascii_lowercase() => {}
                _ => {
                    return Err(Error::InvalidPresentation(format!(
                        "generator `{g}` must be a single lowercase letter"
                    )))
                }
            }
            if self.generators[..i].contains(g) {
                return Err(Error::InvalidPresentation(format!("duplicate generator `{g}`")));
            }
        }
        self.relators
            .iter()
            .map(|r| {
                let w = r.chars().map(|c| self.letter(c)).collect::<Result<Vec<_>>>()?;
                if w.windows(2).any(|p| p[1] == inverse(p[0])) {
                    return Err(Error::InvalidPresentation(format!(
                        "relator `{r}` is not freely reduced"
                    )));
                }
                Ok(w)
            })
            .collect()
    }

    pub fn render(&self, word: &[Letter]) -> String {
        if word.is_empty() {
            return "1".to_string();
        }
        word.iter()
            .map(|&l| {
                let c = self.generators[l / 2].chars().next().unwrap();
                if l % 2 == 1 {
                    c.to_ascii_uppercase()
                } else {
                    c
                }
            })
            .collect()
    }
}

struct Enumeration {
    uf: Vec<usize>,
    table: Vec<Vec<Option<usize>>>,
}

impl Enumeration {
    fn find(&mut self, mut a: usize) -> usize {
        while self.uf[a] != a {
            self.uf[a] = self.uf[self.uf[a]];
            a = self.uf[a];
        }
        a
    }

    fn follow(&mut self, c: usize, l: Letter) -> Option<usize> {
        let r = self.find(c);
        let t = self.table[r][l]?;
        Some(self.find(t))
    }

    fn merge(&mut self, a: usize, b: usize) -> bool {
        let mut queue = vec![(a, b)];
        let mut merged = false;
        while let Some((a, b)) = queue.pop() {
            let (ra, rb) = (self.find(a), self.find(b));
            if ra == rb {
                continue;
            }
            merged = true;
            let (keep, gone) = (ra.min(rb), ra.max(rb));
            self.uf[gone] = keep;
            for l in 0..self.table[gone].len() {
                match (self.table[keep][l], self.table[gone][l]) {
                    (Some(x), Some(y)) => queue.push((x, y)),
                    (None, Some(y)) => self.table[keep][l] = Some(y),
                    _ => {}
                }
            }
        }
        merged
    }
}

fn tree_size(letters: usize, depth: usize) -> Option<usize> {
    let mut total: usize = 1;
    let mut level: usize = 1;
    for k in 0..depth {
        level = level.checked_mul(if k == 0 { letters } else { letters - 1 })?;
        total = total.checked_add(level)?;
    }
    Some(total)
}

/// Word-metric ball of the given radius with unit edge lengths. Vertex `i`
/// is labelled by the shortlex normal form of its element, `1` for the identity.
pub fn cayley_ball(p: &GroupPresentation, radius: usize, cap: usize) -> Result<Graph> {
    let relators = p.words()?;
    let letters = 2 * p.generators.len();
    let pad = relators.iter().map(Vec::len).max().unwrap_or(0);
    let depth = radius + pad;
    let size = if letters == 0 { Some(1) } else { tree_size(letters, depth) };
    let size = match size {
        Some(s) if s <= cap => s,
        _ => {
            return Err(Error::CapExceeded {
                what: "padded word tree nodes",
                needed: size.unwrap_or(usize::MAX),
                cap,
            })
        }
    };
    // Free tree of reduced words.
    let mut table: Vec<Vec<Option<usize>>> = Vec::with_capacity(size);
    let mut last: Vec<Option<Letter>> = Vec::with_capacity(size);
    let mut word_len = Vec::with_capacity(size);
    table.push(vec![None; letters]);
    last.push(None);
    word_len.push(0usize);
    let mut frontier = 0;
    while frontier < table.len() {
        let u = frontier;
        frontier += 1;
        if word_len[u] == depth {
            continue;
        }
        for l in 0..letters {
            if last[u].is_some_and(|x| l == inverse(x)) {
                continue;
            }
            let v = table.len();
            table.push(vec![None; letters]);
            table[v][inverse(l)] = Some(u);
            table[u][l] = Some(v);
            last.push(Some(l));
            word_len.push(word_len[u] + 1);
        }
    }
    let mut en = Enumeration {
        uf: (0..table.len()).collect(),
        table,
    };
    let mut cyclic: Vec<Vec<Letter>> = Vec::new();
    for r in &relators {
        let inv: Vec<Letter> = r.iter().rev().map(|&l| inverse(l)).collect();
        for w in [r.clone(), inv] {
            for s in 0..w.len() {
                let rot: Vec<Letter> = w[s..].iter().chain(&w[..s]).copied().collect();
                if !cyclic.contains(&rot) {
                    cyclic.push(rot);
                }
            }
        }
    }
    loop {
        let mut changed = false;
        for node in 0..en.uf.len() {
            if en.find(node) != node {
                continue;
            }
            for w in &cyclic {
                let mut cur = Some(node);
                for &l in w {
                    cur = cur.and_then(|c| en.follow(c, l));
                }
                if let Some(end) = cur {
                    if en.merge(node, end) {
                        changed = true;
                    }
                }
            }
        }
        if !changed {
            break;
        }
    }
    // Shortlex BFS over classes.
    let root = en.find(0);
    let mut index = std::collections::HashMap::new();
    let mut order = vec![root];
    let mut words: Vec<Vec<Letter>> = vec![Vec::new()];
    index.insert(root, 0usize);
    let mut queue = VecDeque::from([0usize]);
    while let Some(i) = queue.pop_front() {
        if words[i].len() == radius {
            continue;
        }
        for l in 0..letters {
            if let Some(v) = en.follow(order[i], l) {
                if !index.contains_key(&v) {
                    index.insert(v, order.len());
                    let mut w = words[i].clone();
                    w.push(l);
                    words.push(w);
                    order.push(v);
                    queue.push_back(order.len() - 1);
                }
            }
        }
    }
    let mut edges = Vec::new();
    for (i, &c) in order.clone().iter().enumerate() {
        for g in 0..p.generators.len() {
            if let Some(v) = en.follow(c, 2 * g) {
                if let Some(&j) = index.get(&v) {
                    if j != i {
                        edges.push((i, j, 1.0));
                    }
                }
            }
        }
    }
    Graph::new(words.iter().map(|w| p.render(w)).collect(), edges)
}
