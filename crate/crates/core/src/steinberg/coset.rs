use super::{Letter, SteinbergError};
use std::fmt::Write;

const UNDEF: u32 = u32::MAX;

/// A coset table; columns are 2g (generator g) and 2g+1 (its inverse).
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct CosetTable {
    cols: usize,
    rows: usize,
    table: Vec<u32>,
    closed: bool,
}

impl CosetTable {
    pub fn index(&self) -> usize {
        self.rows
    }

    pub fn is_closed(&self) -> bool {
        self.closed
    }

    pub fn num_columns(&self) -> usize {
        self.cols
    }

    #[inline]
    pub fn get(&self, coset: usize, col: usize) -> usize {
        self.table[coset * self.cols + col] as usize
    }

    /// Image of a coset under a word.
    pub fn act(&self, coset: usize, word: &[Letter]) -> usize {
        word.iter().fold(coset, |c, l| self.get(c, l.column()))
    }

    /// The permutation of cosets induced by a word.
    pub fn permutation(&self, word: &[Letter]) -> Vec<u32> {
        (0..self.rows).map(|c| self.act(c, word) as u32).collect()
    }

    /// Tab-separated rows: coset, then one entry per column.
    pub fn to_tsv(&self) -> String {
        let mut out = String::new();
        for c in 0..self.rows {
            write!(out, "{c}").unwrap();
            for x in 0..self.cols {
                write!(out, "\t{}", self.get(c, x)).unwrap();
            }
            out.push('\n');
        }
        out
    }
}

struct Enumerator<'a> {
    cols: usize,
    table: Vec<u32>,
    parent: Vec<u32>,
    relators: &'a [Vec<usize>],
    budget: usize,
    queue: Vec<u32>,
}

impl<'a> Enumerator<'a> {
    fn len(&self) -> usize {
        self.parent.len()
    }

    #[inline]
    fn at(&self, c: u32, x: usize) -> u32 {
        self.table[c as usize * self.cols + x]
    }

    #[inline]
    fn put(&mut self, c: u32, x: usize, v: u32) {
        self.table[c as usize * self.cols + x] = v;
    }

    fn live(&self, c: u32) -> bool {
        self.parent[c as usize] == c
    }

    /// Defines a new coset c·x. Returns UNDEF if the table had to be
    /// compacted first, which invalidates coset numbers held by the caller.
    fn define(&mut self, c: u32, x: usize) -> Result<u32, SteinbergError> {
        if self.len() >= self.budget {
            self.lookahead();
            self.compact();
            if self.len() >= self.budget {
                return Err(SteinbergError::BudgetExceeded(self.budget as u64));
            }
            return Ok(UNDEF);
        }
        let n = self.len() as u32;
        self.parent.push(n);
        self.table.extend(std::iter::repeat_n(UNDEF, self.cols));
        self.put(c, x, n);
        self.put(n, x ^ 1, c);
        Ok(n)
    }

    fn rep(&mut self, c: u32) -> u32 {
        let mut r = c;
        while self.parent[r as usize] != r {
            r = self.parent[r as usize];
        }
        let mut c = c;
        while self.parent[c as usize] != r {
            let next = self.parent[c as usize];
            self.parent[c as usize] = r;
            c = next;
        }
        r
    }

    fn merge(&mut self, a: u32, b: u32) {
        let (a, b) = (self.rep(a), self.rep(b));
        if a == b {
            return;
        }
        let (lo, hi) = if a < b { (a, b) } else { (b, a) };
        self.parent[hi as usize] = lo;
        self.queue.push(hi);
    }

    fn coincidence(&mut self, a: u32, b: u32) {
        self.queue.clear();
        self.merge(a, b);
        let mut i = 0;
        while i < self.queue.len() {
            let e = self.queue[i];
            i += 1;
            for x in 0..self.cols {
                let f = self.at(e, x);
                if f == UNDEF {
                    continue;
                }
                self.put(f, x ^ 1, UNDEF);
                let e1 = self.rep(e);
                let f1 = self.rep(f);
                let g = self.at(e1, x);
                if g != UNDEF {
                    self.merge(f1, g);
                } else {
                    let h = self.at(f1, x ^ 1);
                    if h != UNDEF {
                        self.merge(e1, h);
                    } else {
                        self.put(e1, x, f1);
                        self.put(f1, x ^ 1, e1);
                    }
                }
            }
        }
    }

    /// Scans a word at a coset, deducing and (optionally) defining. Returns
    /// false if the scan was interrupted by a compaction.
    fn scan_and_fill(&mut self, c: u32, w: &[usize], define: bool) -> Result<bool, SteinbergError> {
        if w.is_empty() {
            return Ok(true);
        }
        let (mut f, mut b) = (c, c);
        let mut i = 0isize;
        let mut j = w.len() as isize - 1;
        loop {
            while i <= j && self.at(f, w[i as usize]) != UNDEF {
                f = self.at(f, w[i as usize]);
                i += 1;
            }
            if i > j {
                if f != b {
                    self.coincidence(f, b);
                }
                return Ok(true);
            }
            while j >= i && self.at(b, w[j as usize] ^ 1) != UNDEF {
                b = self.at(b, w[j as usize] ^ 1);
                j -= 1;
            }
            if j < i {
                self.coincidence(f, b);
                return Ok(true);
            }
            if i == j {
                let x = w[i as usize];
                self.put(f, x, b);
                self.put(b, x ^ 1, f);
                return Ok(true);
            }
            if !define {
                return Ok(true);
            }
            if self.define(f, w[i as usize])? == UNDEF {
                return Ok(false);
            }
        }
    }

    /// Scans every relator at every live coset without defining.
    fn lookahead(&mut self) {
        let rels = self.relators;
        for c in 0..self.len() as u32 {
            for r in rels {
                if !self.live(c) {
                    break;
                }
                let _ = self.scan_and_fill(c, r, false);
            }
        }
    }

    /// Renumbers live cosets consecutively, preserving order.
    fn compact(&mut self) -> Vec<u32> {
        let n = self.len();
        let mut map = vec![UNDEF; n];
        let mut next = 0u32;
        for (c, slot) in map.iter_mut().enumerate() {
            if self.parent[c] == c as u32 {
                *slot = next;
                next += 1;
            }
        }
        let mut table = Vec::with_capacity(next as usize * self.cols);
        for c in 0..n {
            if map[c] == UNDEF {
                continue;
            }
            for x in 0..self.cols {
                let v = self.table[c * self.cols + x];
                table.push(if v == UNDEF { UNDEF } else { map[v as usize] });
            }
        }
        self.table = table;
        self.parent = (0..next).collect();
        map
    }
}

/// Hasse–Lee–Trotter coset enumeration of the subgroup generated by
/// `subgroup` in the group with the given relators. `ngens` generators,
/// words as column sequences. At most `budget` cosets are held at once.
pub(crate) fn enumerate_cosets(
    ngens: usize,
    relators: &[Vec<usize>],
    subgroup: &[Vec<usize>],
    budget: usize,
) -> Result<CosetTable, SteinbergError> {
    let cols = 2 * ngens;
    let mut en = Enumerator {
        cols,
        table: vec![UNDEF; cols],
        parent: vec![0],
        relators,
        budget: budget.max(1),
        queue: Vec::new(),
    };
    'restart: loop {
        for w in subgroup {
            if !en.scan_and_fill(0, w, true)? {
                continue 'restart;
            }
        }
        break;
    }
    let mut c = 0u32;
    while (c as usize) < en.len() {
        if en.live(c) {
            let mut interrupted = false;
            for r in relators {
                if !en.scan_and_fill(c, r, true)? {
                    interrupted = true;
                    break;
                }
                if !en.live(c) {
                    break;
                }
            }
            if interrupted {
                // Cosets were compacted; restart the sweep from the start.
                c = 0;
                continue;
            }
            if en.live(c) {
                for x in 0..cols {
                    if en.at(c, x) == UNDEF && en.define(c, x)? == UNDEF {
                        interrupted = true;
                        break;
                    }
                }
                if interrupted {
                    c = 0;
                    continue;
                }
            }
        }
        c += 1;
    }
    en.compact();
    let rows = en.len();
    let closed = en.table.iter().all(|&v| v != UNDEF);
    Ok(CosetTable {
        cols,
        rows,
        table: en.table,
        closed,
    })
}
