use std::collections::HashMap;
use std::hash::{DefaultHasher, Hasher};

use super::annotation::{AnnotationVector, RowIndex};
use super::union_find::UnionFind;
use super::CamError;
use crate::field::{FieldElement, FieldSpec};

const NIL: u32 = u32::MAX;
/// `root_col` marker for the zero-annotation class.
const ZERO_COL: u32 = u32::MAX - 1;
/// uf node of the zero-annotation class (created first).
const ZERO_NODE: u32 = 0;

/// Caller-chosen handle of a simplex inside one dimension's matrix.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Slot(pub u32);

#[derive(Debug, Clone, Copy)]
struct Cell {
    row: u32,
    coeff: FieldElement,
    link: u32,
}

/// Node of a row ring.
#[derive(Debug, Clone, Copy)]
struct Link {
    col: u32,
    row: u32,
    prev: u32,
    next: u32,
}

#[derive(Debug, Clone, Default)]
struct Column {
    cells: Vec<Cell>,
    root: u32,
    hash: u64,
    live: bool,
}

#[derive(Debug, Clone, Copy)]
struct Ring {
    head: u32,
    len: u32,
    live: bool,
    // index handed out at least once
    used: bool,
}

/// Compressed annotation matrix for the simplices of one dimension.
///
/// Distinct nonzero columns are stored once; simplices sharing a column are
/// grouped in a union-find forest whose roots point at their column. Every
/// nonzero entry is threaded on a circular doubly-linked ring per row, so all
/// columns with a nonzero at row `j` can be visited without scanning.
#[derive(Debug, Clone)]
pub struct AnnotationMatrix {
    field: FieldSpec,
    columns: Vec<Column>,
    free_columns: Vec<u32>,
    live_columns: usize,
    links: Vec<Link>,
    free_links: Vec<u32>,
    rows: Vec<Ring>,
    live_rows: usize,
    nonzeros: usize,
    av: HashMap<u64, Vec<u32>>,
    uf: UnionFind,
    root_col: Vec<u32>,
    slot_node: Vec<u32>,
    field_ops: u64,
    scratch: Vec<Cell>,
}

fn content_hash(cells: &[Cell]) -> u64 {
    let mut h = DefaultHasher::new();
    for c in cells {
        h.write_u32(c.row);
        h.write_u32(c.coeff.value());
    }
    h.finish()
}

impl AnnotationMatrix {
    pub fn new(field: FieldSpec) -> Self {
        let mut uf = UnionFind::new();
        let zero = uf.make_set();
        debug_assert_eq!(zero, ZERO_NODE);
        AnnotationMatrix {
            field,
            columns: Vec::new(),
            free_columns: Vec::new(),
            live_columns: 0,
            links: Vec::new(),
            free_links: Vec::new(),
            rows: Vec::new(),
            live_rows: 0,
            nonzeros: 0,
            av: HashMap::new(),
            uf,
            root_col: vec![ZERO_COL],
            slot_node: Vec::new(),
            field_ops: 0,
            scratch: Vec::new(),
        }
    }

    /// Loads a matrix state directly: `columns[i]` becomes the annotation of
    /// `Slot(i)`. Every row mentioned is live; the row allocator resumes after
    /// the largest one.
    pub fn from_columns(field: FieldSpec, columns: &[AnnotationVector]) -> Self {
        let mut m = AnnotationMatrix::new(field);
        let max_row = columns
            .iter()
            .filter_map(|c| c.max_entry())
            .map(|(r, _)| r.0 + 1)
            .max()
            .unwrap_or(0);
        m.rows = vec![Ring { head: NIL, len: 0, live: false, used: true }; max_row as usize];
        for c in columns {
            for &(r, _) in c.entries() {
                let ring = &mut m.rows[r.0 as usize];
                if !ring.live {
                    ring.live = true;
                    m.live_rows += 1;
                }
            }
        }
        for (i, c) in columns.iter().enumerate() {
            let slot = Slot(i as u32);
            let node = m.uf.make_set();
            m.root_col.push(NIL);
            m.set_slot(slot, node);
            if c.is_zero() {
                m.uf.union(node, ZERO_NODE);
                let r = m.uf.find(node);
                m.root_col[r as usize] = ZERO_COL;
                continue;
            }
            let cells: Vec<Cell> = c
                .entries()
                .iter()
                .map(|&(r, f)| Cell { row: r.0, coeff: f, link: NIL })
                .collect();
            let col = m.alloc_column(cells, node);
            m.root_col[node as usize] = col;
            if let Some(other) = m.av_search(col) {
                let root = m.uf.union(node, m.columns[other as usize].root);
                m.root_col[root as usize] = other;
                m.columns[other as usize].root = root;
                m.free_column(col);
            } else {
                m.av_insert(col);
            }
        }
        m
    }

    pub fn field(&self) -> &FieldSpec {
        &self.field
    }

    /// Number of live cocycles (`g`).
    pub fn live_rows(&self) -> usize {
        self.live_rows
    }

    /// Number of distinct nonzero columns (`s`).
    pub fn distinct_columns(&self) -> usize {
        self.live_columns
    }

    /// Number of stored nonzero entries (`|M|`).
    pub fn nonzeros(&self) -> usize {
        self.nonzeros
    }

    pub fn field_ops(&self) -> u64 {
        self.field_ops
    }

    /// Next row index the allocator will hand out.
    pub fn next_row(&self) -> RowIndex {
        RowIndex(self.rows.len() as u32)
    }

    pub fn is_row_live(&self, row: RowIndex) -> bool {
        self.rows.get(row.0 as usize).is_some_and(|r| r.live)
    }

    pub fn is_assigned(&self, slot: Slot) -> bool {
        self.slot_node.get(slot.0 as usize).is_some_and(|&n| n != NIL)
    }

    fn set_slot(&mut self, slot: Slot, node: u32) {
        let i = slot.0 as usize;
        if self.slot_node.len() <= i {
            self.slot_node.resize(i + 1, NIL);
        }
        self.slot_node[i] = node;
    }

    fn node_of(&self, slot: Slot) -> Result<u32, CamError> {
        match self.slot_node.get(slot.0 as usize) {
            Some(&n) if n != NIL => Ok(n),
            _ => Err(CamError::UnassignedSlot(slot.0)),
        }
    }

    /// Column id holding the annotation of `slot`, `None` for the zero class.
    fn column_of(&mut self, slot: Slot) -> Result<Option<u32>, CamError> {
        let node = self.node_of(slot)?;
        let root = self.uf.find(node);
        let col = self.root_col[root as usize];
        Ok((col != ZERO_COL).then_some(col))
    }

    /// Annotation vector of an assigned slot.
    pub fn find_annotation(&mut self, slot: Slot) -> Result<AnnotationVector, CamError> {
        Ok(match self.column_of(slot)? {
            None => AnnotationVector::zero(),
            Some(col) => AnnotationVector::from_canonical(
                self.columns[col as usize]
                    .cells
                    .iter()
                    .map(|c| (RowIndex(c.row), c.coeff))
                    .collect(),
            ),
        })
    }

    /// `acc += Σ sign_i · a(slot_i)`, counting the field operations spent.
    pub fn accumulate(
        &mut self,
        faces: impl IntoIterator<Item = (Slot, FieldElement)>,
        acc: &mut AnnotationVector,
        scratch: &mut Vec<(RowIndex, FieldElement)>,
    ) -> Result<(), CamError> {
        for (slot, coeff) in faces {
            if let Some(col) = self.column_of(slot)? {
                let cells = &self.columns[col as usize].cells;
                self.field_ops += acc.add_scaled(
                    &self.field,
                    coeff,
                    cells.iter().map(|c| (RowIndex(c.row), c.coeff)),
                    scratch,
                );
            }
        }
        Ok(())
    }

    /// Case 1: a new cocycle `[(i_new, 1)]` for `slot`, with `i_new` the next
    /// row after every index handed out so far.
    pub fn create_cocycle(&mut self, slot: Slot) -> Result<RowIndex, CamError> {
        self.create_cocycle_at(slot, self.next_row())
    }

    /// Case 1 with a caller-chosen row index, which must never have been
    /// used. Lazy insertion reserves indices in visiting order and claims
    /// them later, so that a larger index still means a younger cocycle.
    pub fn create_cocycle_at(&mut self, slot: Slot, row: RowIndex) -> Result<RowIndex, CamError> {
        if self.is_assigned(slot) {
            return Err(CamError::SlotAlreadyAssigned(slot.0));
        }
        let r = row.0 as usize;
        if r >= self.rows.len() {
            self.rows.resize(r + 1, Ring { head: NIL, len: 0, live: false, used: false });
        }
        if self.rows[r].used {
            return Err(CamError::RowInUse(row.0));
        }
        self.rows[r] = Ring { head: NIL, len: 0, live: true, used: true };
        self.live_rows += 1;
        let row = row.0;
        let node = self.uf.make_set();
        self.root_col.push(NIL);
        self.set_slot(slot, node);
        let col = self.alloc_column(
            vec![Cell { row, coeff: FieldElement::ONE, link: NIL }],
            node,
        );
        self.root_col[node as usize] = col;
        debug_assert!(self.av_search(col).is_none());
        self.av_insert(col);
        Ok(RowIndex(row))
    }

    /// Puts `slot` in the zero-annotation class.
    pub fn assign_zero(&mut self, slot: Slot) -> Result<(), CamError> {
        if self.is_assigned(slot) {
            return Err(CamError::SlotAlreadyAssigned(slot.0));
        }
        let node = self.uf.make_set();
        self.root_col.push(NIL);
        self.set_slot(slot, node);
        let root = self.uf.union(node, ZERO_NODE);
        self.root_col[root as usize] = ZERO_COL;
        Ok(())
    }

    /// Case 2: removes the cocycle at the largest row `j` of `boundary`.
    /// Every column with a nonzero `f` at row `j` receives `-f/c_j · boundary`,
    /// after which row `j` is empty and retired. Columns that became equal are
    /// merged. Returns `j`.
    pub fn kill_cocycle(&mut self, boundary: &AnnotationVector) -> Result<RowIndex, CamError> {
        let (j, cj) = boundary.max_entry().ok_or(CamError::ZeroAnnotation)?;
        for &(r, _) in boundary.entries() {
            if !self.is_row_live(r) {
                return Err(CamError::DeadRow(r.0));
            }
        }
        let inv = self.field.inv(cj).expect("nonzero pivot");
        self.field_ops += 1;

        let members = self.ring_members(j.0);
        for col in members {
            let cells = &self.columns[col as usize].cells;
            let f = cells[cells.binary_search_by_key(&j.0, |c| c.row).expect("ring member")].coeff;
            let scale = self.field.neg(self.field.mul(f, inv));
            self.field_ops += 2;

            self.av_remove(col);
            self.add_scaled_to_column(col, scale, boundary);

            let root = self.columns[col as usize].root;
            if self.columns[col as usize].cells.is_empty() {
                let r = self.uf.union(root, ZERO_NODE);
                self.root_col[r as usize] = ZERO_COL;
                self.free_column(col);
            } else {
                self.columns[col as usize].hash = content_hash(&self.columns[col as usize].cells);
                if let Some(other) = self.av_search(col) {
                    let r = self.uf.union(root, self.columns[other as usize].root);
                    self.root_col[r as usize] = other;
                    self.columns[other as usize].root = r;
                    self.free_column(col);
                } else {
                    self.av_insert(col);
                }
            }
        }

        let ring = &mut self.rows[j.0 as usize];
        debug_assert_eq!(ring.len, 0);
        ring.live = false;
        ring.head = NIL;
        self.live_rows -= 1;
        Ok(j)
    }

    fn ring_members(&self, row: u32) -> Vec<u32> {
        let ring = self.rows[row as usize];
        let mut out = Vec::with_capacity(ring.len as usize);
        if ring.head == NIL {
            return out;
        }
        let mut cur = ring.head;
        loop {
            out.push(self.links[cur as usize].col);
            cur = self.links[cur as usize].next;
            if cur == ring.head {
                break;
            }
        }
        out
    }

    fn add_scaled_to_column(&mut self, col: u32, scale: FieldElement, other: &AnnotationVector) {
        let mut out = std::mem::take(&mut self.scratch);
        out.clear();
        let old = std::mem::take(&mut self.columns[col as usize].cells);
        let mut ai = old.iter().copied().peekable();
        for &(rb, cb) in other.entries() {
            while let Some(&c) = ai.peek() {
                if c.row < rb.0 {
                    out.push(c);
                    ai.next();
                } else {
                    break;
                }
            }
            let term = self.field.mul(scale, cb);
            self.field_ops += 1;
            match ai.peek().copied() {
                Some(c) if c.row == rb.0 => {
                    ai.next();
                    let s = self.field.add(c.coeff, term);
                    self.field_ops += 1;
                    if s.is_zero() {
                        self.unlink(c.link);
                        self.nonzeros -= 1;
                    } else {
                        out.push(Cell { coeff: s, ..c });
                    }
                }
                _ => {
                    let link = self.link(col, rb.0);
                    self.nonzeros += 1;
                    out.push(Cell { row: rb.0, coeff: term, link });
                }
            }
        }
        out.extend(ai);
        self.scratch = old;
        self.columns[col as usize].cells = out;
    }

    fn alloc_column(&mut self, mut cells: Vec<Cell>, root: u32) -> u32 {
        let id = match self.free_columns.pop() {
            Some(id) => id,
            None => {
                self.columns.push(Column::default());
                (self.columns.len() - 1) as u32
            }
        };
        for c in &mut cells {
            c.link = self.link(id, c.row);
        }
        self.nonzeros += cells.len();
        let hash = content_hash(&cells);
        self.columns[id as usize] = Column { cells, root, hash, live: true };
        self.live_columns += 1;
        id
    }

    fn free_column(&mut self, col: u32) {
        let cells = std::mem::take(&mut self.columns[col as usize].cells);
        for c in &cells {
            self.unlink(c.link);
        }
        self.nonzeros -= cells.len();
        self.columns[col as usize].live = false;
        self.live_columns -= 1;
        self.free_columns.push(col);
    }

    fn link(&mut self, col: u32, row: u32) -> u32 {
        let id = match self.free_links.pop() {
            Some(id) => id,
            None => {
                self.links.push(Link { col, row, prev: NIL, next: NIL });
                (self.links.len() - 1) as u32
            }
        };
        let ring = self.rows[row as usize];
        let (prev, next) = if ring.head == NIL {
            (id, id)
        } else {
            let head = ring.head;
            (self.links[head as usize].prev, head)
        };
        self.links[id as usize] = Link { col, row, prev, next };
        self.links[prev as usize].next = id;
        self.links[next as usize].prev = id;
        let ring = &mut self.rows[row as usize];
        if ring.head == NIL {
            ring.head = id;
        }
        ring.len += 1;
        id
    }

    fn unlink(&mut self, id: u32) {
        let Link { row, prev, next, .. } = self.links[id as usize];
        let ring = &mut self.rows[row as usize];
        ring.len -= 1;
        if ring.len == 0 {
            ring.head = NIL;
        } else {
            if ring.head == id {
                ring.head = next;
            }
            self.links[prev as usize].next = next;
            self.links[next as usize].prev = prev;
        }
        self.links[id as usize] = Link { col: NIL, row: NIL, prev: NIL, next: NIL };
        self.free_links.push(id);
    }

    fn av_search(&self, col: u32) -> Option<u32> {
        let c = &self.columns[col as usize];
        self.av.get(&c.hash)?.iter().copied().find(|&o| {
            o != col && {
                let oc = &self.columns[o as usize].cells;
                oc.len() == c.cells.len()
                    && oc.iter().zip(&c.cells).all(|(x, y)| x.row == y.row && x.coeff == y.coeff)
            }
        })
    }

    fn av_insert(&mut self, col: u32) {
        let h = self.columns[col as usize].hash;
        self.av.entry(h).or_default().push(col);
    }

    fn av_remove(&mut self, col: u32) {
        let h = self.columns[col as usize].hash;
        if let Some(bucket) = self.av.get_mut(&h) {
            bucket.retain(|&c| c != col);
            if bucket.is_empty() {
                self.av.remove(&h);
            }
        }
    }

    /// Exhaustive consistency check of rings, columns, the vector store and
    /// the union-find forest. Linear in the size of the structure.
    pub fn check_invariants(&self) -> Result<(), String> {
        let mut entry_count = 0usize;
        let mut live_cols = 0usize;
        let mut seen: HashMap<Vec<(u32, u32)>, u32> = HashMap::new();
        for (id, col) in self.columns.iter().enumerate() {
            let id = id as u32;
            if !col.live {
                if !col.cells.is_empty() {
                    return Err(format!("dead column {id} holds entries"));
                }
                continue;
            }
            live_cols += 1;
            if col.cells.is_empty() {
                return Err(format!("live column {id} is zero"));
            }
            for w in col.cells.windows(2) {
                if w[0].row >= w[1].row {
                    return Err(format!("column {id} rows not strictly increasing"));
                }
            }
            for c in &col.cells {
                if c.coeff.is_zero() || c.coeff.value() >= self.field.characteristic() {
                    return Err(format!("column {id} has non-canonical coefficient"));
                }
                if !self.is_row_live(RowIndex(c.row)) {
                    return Err(format!("column {id} uses dead row {}", c.row));
                }
                let l = self.links.get(c.link as usize).ok_or("dangling link")?;
                if l.col != id || l.row != c.row {
                    return Err(format!("column {id} row {} link mismatch", c.row));
                }
            }
            entry_count += col.cells.len();
            if col.hash != content_hash(&col.cells) {
                return Err(format!("column {id} has stale hash"));
            }
            if !self.av.get(&col.hash).is_some_and(|b| b.iter().filter(|&&c| c == id).count() == 1) {
                return Err(format!("column {id} missing from vector store"));
            }
            let key: Vec<(u32, u32)> = col.cells.iter().map(|c| (c.row, c.coeff.value())).collect();
            if let Some(o) = seen.insert(key, id) {
                return Err(format!("columns {o} and {id} are duplicates"));
            }
            if !self.uf.is_root(col.root) || self.root_col[col.root as usize] != id {
                return Err(format!("column {id} is not owned by a union-find root"));
            }
        }
        if live_cols != self.live_columns {
            return Err(format!("live column count {live_cols} != {}", self.live_columns));
        }
        let stored: usize = self.av.values().map(Vec::len).sum();
        if stored != live_cols {
            return Err(format!("vector store holds {stored} columns, {live_cols} live"));
        }
        if entry_count != self.nonzeros {
            return Err(format!("nonzero count {} != {entry_count}", self.nonzeros));
        }

        let mut ring_total = 0usize;
        let mut live_rows = 0usize;
        for (row, ring) in self.rows.iter().enumerate() {
            if !ring.live {
                if ring.len != 0 || ring.head != NIL {
                    return Err(format!("dead row {row} has entries"));
                }
                continue;
            }
            live_rows += 1;
            if ring.len == 0 {
                return Err(format!("live row {row} is empty"));
            }
            let mut cur = ring.head;
            let mut n = 0u32;
            loop {
                let l = self.links[cur as usize];
                if l.row != row as u32 {
                    return Err(format!("ring {row} threads a link of row {}", l.row));
                }
                if self.links[l.next as usize].prev != cur {
                    return Err(format!("ring {row} broken at link {cur}"));
                }
                let col = &self.columns[l.col as usize];
                if !col.live || !col.cells.iter().any(|c| c.row == row as u32 && c.link == cur) {
                    return Err(format!("ring {row} link {cur} has no matching entry"));
                }
                n += 1;
                cur = l.next;
                if cur == ring.head || n > ring.len {
                    break;
                }
            }
            if n != ring.len {
                return Err(format!("ring {row} length {} but walked {n}", ring.len));
            }
            ring_total += n as usize;
        }
        if ring_total != entry_count {
            return Err(format!("rings thread {ring_total} entries, columns hold {entry_count}"));
        }
        if live_rows != self.live_rows {
            return Err(format!("live row count {} != {live_rows}", self.live_rows));
        }

        let zero_root = self.uf.find_const(ZERO_NODE);
        if self.root_col[zero_root as usize] != ZERO_COL {
            return Err("zero class root lost its marker".into());
        }
        let mut roots = 0usize;
        for node in 1..self.uf.len() as u32 {
            if self.uf.is_root(node) && node != zero_root {
                roots += 1;
                let c = self.root_col[node as usize];
                if c == ZERO_COL || c == NIL || !self.columns[c as usize].live {
                    return Err(format!("root {node} does not own a live column"));
                }
            }
        }
        if roots != live_cols {
            return Err(format!("{roots} union-find roots for {live_cols} distinct columns"));
        }
        Ok(())
    }
}
