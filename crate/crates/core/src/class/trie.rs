//! Finite sets of excluded cylinders and the cover test against them.

use crate::bits::Word;

#[derive(Clone, Debug, Default)]
struct Node {
    children: [Option<usize>; 2],
    parent: Option<usize>,
    terminal: bool,
    full: bool,
}

/// A trie of excluded words. A node is *full* when the cylinders below it
/// are covered by exclusions of bounded length, which decides whether a
/// word still extends to a point outside every excluded cylinder.
#[derive(Clone, Debug)]
pub struct CoverTrie {
    nodes: Vec<Node>,
    max_len: usize,
    count: usize,
}

impl Default for CoverTrie {
    fn default() -> Self {
        Self::new()
    }
}

impl CoverTrie {
    pub fn new() -> Self {
        CoverTrie { nodes: vec![Node::default()], max_len: 0, count: 0 }
    }

    pub fn from_words<'a>(words: impl IntoIterator<Item = &'a Word>) -> Self {
        let mut t = CoverTrie::new();
        for w in words {
            t.insert(w);
        }
        t
    }

    pub fn max_len(&self) -> usize {
        self.max_len
    }

    pub fn len(&self) -> usize {
        self.count
    }

    pub fn is_empty(&self) -> bool {
        self.count == 0
    }

    pub fn insert(&mut self, w: &[bool]) {
        self.count += 1;
        self.max_len = self.max_len.max(w.len());
        let mut n = 0;
        for &b in w {
            if self.nodes[n].full {
                return;
            }
            n = match self.nodes[n].children[b as usize] {
                Some(c) => c,
                None => {
                    self.nodes.push(Node { parent: Some(n), ..Node::default() });
                    let c = self.nodes.len() - 1;
                    self.nodes[n].children[b as usize] = Some(c);
                    c
                }
            };
        }
        self.nodes[n].terminal = true;
        self.nodes[n].full = true;
        let mut cur = self.nodes[n].parent;
        while let Some(p) = cur {
            let full = self.nodes[p].children.iter().all(|c| c.is_some_and(|c| self.nodes[c].full));
            if !full || self.nodes[p].full {
                break;
            }
            self.nodes[p].full = true;
            cur = self.nodes[p].parent;
        }
    }

    /// Whether every infinite extension of `w` meets an excluded cylinder.
    pub fn covered(&self, w: &[bool]) -> bool {
        let mut n = 0;
        for &b in w {
            if self.nodes[n].full {
                return true;
            }
            match self.nodes[n].children[b as usize] {
                Some(c) => n = c,
                None => return false,
            }
        }
        self.nodes[n].full
    }
}
