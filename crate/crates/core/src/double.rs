//! Squares, connections, grid composition, and commutative cubes.
//!
//! A square has four boundary paths over a presented category, read as
//!
//! ```text
//!        top
//!     P -----> Q
//!     |        |
//! left|        |right
//!     v        v
//!     R -----> S
//!       bottom
//! ```
//!
//! Squares compose horizontally (`hcompose`, sharing a vertical edge) and
//! vertically (`vcompose`, sharing a horizontal edge). Thin squares are the
//! squares determined entirely by their boundary: double identities, the
//! edge-degenerate squares `eps1`/`eps2`, the corner connections
//! `gamma`/`gamma_prime`, and composites thereof. A thin square exists for a
//! boundary exactly when the shell commutes, `top . right = left . bottom`
//! modulo the presentation's relations.
//!
//! Grids subdivide a square into composable cells. Evaluating a grid reads
//! off its outer boundary; by the interchange law the two ways of composing
//! a grid (rows first or columns first) agree, so the boundary is computed
//! by plain concatenation. Equality of two grids is decided by a bounded
//! bidirectional search over value-preserving reduction moves; thin-only
//! grids are compared by boundary alone.
//!
//! A cube is given by its six square faces. Its two composite faces are
//! 3x3 grids with connection fillers in the corners; the cube commutes when
//! the two grids are equal.

use std::collections::{HashMap, VecDeque};

use thiserror::Error;

use crate::category::{
    compose_path, paths_equal, CatError, CategoryPresentation, ObjectId, Path, TriState,
};

/// Errors from square, grid, and cube construction.
#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum DoubleError {
    #[error("square corners do not cohere: {reason}")]
    CornerMismatch { reason: String },
    #[error("thin shell does not commute: {reason}")]
    ShellViolation { reason: String },
    #[error("thin shell could not be verified within the word depth: {reason}")]
    ShellInconclusive { reason: String },
    #[error("edges do not match for {op}: {reason}")]
    EdgeMismatch { op: &'static str, reason: String },
    #[error("invalid grid: {reason}")]
    InvalidGrid { reason: String },
    #[error("cell ({row}, {col}) is not thin")]
    NonThinCell { row: usize, col: usize },
    #[error("cube faces do not share edges consistently: {reason}")]
    FaceMismatch { reason: String },
    #[error("cube faces admit no composable filler grid: {reason}")]
    NonComposableCube { reason: String },
    #[error(transparent)]
    Cat(#[from] CatError),
}

/// The boundary-determined squares.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub enum ThinConstruction {
    /// All four edges are the identity of one object.
    DoubleIdentity(ObjectId),
    /// Vertical identity on an edge: top = bottom = edge, sides identity.
    Eps1(Path),
    /// Horizontal identity on an edge: left = right = edge, top and bottom
    /// identity.
    Eps2(Path),
    /// Corner connection with the edge on top and left, identities on
    /// bottom and right.
    Gamma(Path),
    /// Corner connection with identities on top and left, the edge on
    /// bottom and right.
    GammaPrime(Path),
    /// A thin square not of the basic shapes; carries no data beyond the
    /// square's boundary.
    ThinComposite,
}

/// How a square was formed.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub enum SquareKind {
    /// An opaque named 2-cell; equal only to itself (with equal boundary).
    Generator(String),
    /// A boundary-determined square.
    Thin(ThinConstruction),
    /// A formal composite kept as a tree for the equality search.
    Composite {
        op: CompositionDirection,
        lhs: Box<Square>,
        rhs: Box<Square>,
    },
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum CompositionDirection {
    Horizontal,
    Vertical,
}

/// A square with its four boundary paths.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct Square {
    kind: SquareKind,
    top: Path,
    bottom: Path,
    left: Path,
    right: Path,
}

/// Checks the corner coherence of a boundary: top: P -> Q, left: P -> R,
/// right: Q -> S, bottom: R -> S.
fn check_corners(top: &Path, bottom: &Path, left: &Path, right: &Path) -> Result<(), DoubleError> {
    if top.src != left.src {
        return Err(DoubleError::CornerMismatch {
            reason: format!("top starts at {} but left starts at {}", top.src, left.src),
        });
    }
    if top.tgt != right.src {
        return Err(DoubleError::CornerMismatch {
            reason: format!("top ends at {} but right starts at {}", top.tgt, right.src),
        });
    }
    if left.tgt != bottom.src {
        return Err(DoubleError::CornerMismatch {
            reason: format!("left ends at {} but bottom starts at {}", left.tgt, bottom.src),
        });
    }
    if right.tgt != bottom.tgt {
        return Err(DoubleError::CornerMismatch {
            reason: format!("right ends at {} but bottom ends at {}", right.tgt, bottom.tgt),
        });
    }
    Ok(())
}

/// The canonical thin construction for a boundary, chosen by syntactic
/// pattern so that equal boundaries always canonicalize identically.
fn canonical_thin(top: &Path, bottom: &Path, left: &Path, right: &Path) -> ThinConstruction {
    let ids = [top, bottom, left, right].map(Path::is_identity);
    match ids {
        [true, true, true, true] => ThinConstruction::DoubleIdentity(top.src.clone()),
        _ if left.is_identity() && right.is_identity() && top == bottom => {
            ThinConstruction::Eps1(top.clone())
        }
        _ if top.is_identity() && bottom.is_identity() && left == right => {
            ThinConstruction::Eps2(left.clone())
        }
        _ if bottom.is_identity() && right.is_identity() && top == left => {
            ThinConstruction::Gamma(top.clone())
        }
        _ if top.is_identity() && left.is_identity() && bottom == right => {
            ThinConstruction::GammaPrime(bottom.clone())
        }
        _ => ThinConstruction::ThinComposite,
    }
}

impl Square {
    /// An opaque 2-cell with the given boundary. Only corner coherence is
    /// required; a generator's shell need not commute.
    pub fn generator(
        name: impl Into<String>,
        top: Path,
        bottom: Path,
        left: Path,
        right: Path,
    ) -> Result<Self, DoubleError> {
        check_corners(&top, &bottom, &left, &right)?;
        Ok(Square {
            kind: SquareKind::Generator(name.into()),
            top,
            bottom,
            left,
            right,
        })
    }

    /// A thin square on the given boundary. The shell `top . right =
    /// left . bottom` is decided modulo the presentation's relations with
    /// the given word depth; an undecided shell is an error rather than a
    /// silent acceptance.
    pub fn thin(
        pres: &CategoryPresentation,
        top: Path,
        bottom: Path,
        left: Path,
        right: Path,
        word_depth: usize,
    ) -> Result<Self, DoubleError> {
        check_corners(&top, &bottom, &left, &right)?;
        let clockwise = compose_path(&top, &right).expect("corner coherence");
        let counter = compose_path(&left, &bottom).expect("corner coherence");
        match paths_equal(pres, &clockwise, &counter, word_depth)? {
            TriState::Equal => {}
            TriState::NotEqualWithinBound => {
                return Err(DoubleError::ShellViolation {
                    reason: format!("{clockwise} and {counter} are distinct modulo relations"),
                })
            }
            TriState::Inconclusive => {
                return Err(DoubleError::ShellInconclusive {
                    reason: format!("{clockwise} vs {counter} undecided at depth {word_depth}"),
                })
            }
        }
        Ok(Square::thin_from_boundary(top, bottom, left, right))
    }

    /// A thin square whose shell is already known to commute (composites of
    /// verified thin squares inherit commuting shells).
    fn thin_from_boundary(top: Path, bottom: Path, left: Path, right: Path) -> Self {
        let kind = SquareKind::Thin(canonical_thin(&top, &bottom, &left, &right));
        Square {
            kind,
            top,
            bottom,
            left,
            right,
        }
    }

    /// The doubly degenerate square on one object.
    pub fn double_identity(obj: ObjectId) -> Self {
        let id = Path::identity(obj);
        Square::thin_from_boundary(id.clone(), id.clone(), id.clone(), id)
    }

    /// The vertical identity on an edge: `top = bottom = edge`.
    pub fn eps1(edge: Path) -> Self {
        let src = Path::identity(edge.src.clone());
        let tgt = Path::identity(edge.tgt.clone());
        Square::thin_from_boundary(edge.clone(), edge, src, tgt)
    }

    /// The horizontal identity on an edge: `left = right = edge`.
    pub fn eps2(edge: Path) -> Self {
        let src = Path::identity(edge.src.clone());
        let tgt = Path::identity(edge.tgt.clone());
        Square::thin_from_boundary(src, tgt, edge.clone(), edge)
    }

    /// The connection turning the edge from top to left.
    pub fn gamma(edge: Path) -> Self {
        let tgt = Path::identity(edge.tgt.clone());
        Square::thin_from_boundary(edge.clone(), tgt.clone(), edge, tgt)
    }

    /// The connection turning the edge from bottom to right.
    pub fn gamma_prime(edge: Path) -> Self {
        let src = Path::identity(edge.src.clone());
        Square::thin_from_boundary(src.clone(), edge.clone(), src, edge)
    }

    pub fn kind(&self) -> &SquareKind {
        &self.kind
    }

    pub fn top(&self) -> &Path {
        &self.top
    }

    pub fn bottom(&self) -> &Path {
        &self.bottom
    }

    pub fn left(&self) -> &Path {
        &self.left
    }

    pub fn right(&self) -> &Path {
        &self.right
    }

    pub fn is_thin(&self) -> bool {
        matches!(self.kind, SquareKind::Thin(_))
    }

    /// True for the exact unit of horizontal composition at its edge: a
    /// thin square with identity top and bottom and equal sides.
    fn is_horizontal_unit(&self) -> bool {
        self.is_thin()
            && self.top.is_identity()
            && self.bottom.is_identity()
            && self.left == self.right
    }

    /// True for the exact unit of vertical composition at its edge: a thin
    /// square with identity sides and equal top and bottom.
    fn is_vertical_unit(&self) -> bool {
        self.is_thin()
            && self.left.is_identity()
            && self.right.is_identity()
            && self.top == self.bottom
    }
}

/// Horizontal composition `x . y`, sharing `right(x) = left(y)`.
///
/// Composition with the exact horizontal unit returns the other square
/// unchanged, so the identity laws hold on the nose. Two thin squares
/// compose to a thin square; any other combination is kept as a composite
/// tree for the equality search.
pub fn hcompose(x: &Square, y: &Square) -> Result<Square, DoubleError> {
    if x.right != y.left {
        return Err(DoubleError::EdgeMismatch {
            op: "horizontal composition",
            reason: format!("right edge {} vs left edge {}", x.right, y.left),
        });
    }
    if y.is_horizontal_unit() {
        return Ok(x.clone());
    }
    if x.is_horizontal_unit() {
        return Ok(y.clone());
    }
    let top = compose_path(&x.top, &y.top).expect("adjacent squares share corners");
    let bottom = compose_path(&x.bottom, &y.bottom).expect("adjacent squares share corners");
    let left = x.left.clone();
    let right = y.right.clone();
    if x.is_thin() && y.is_thin() {
        return Ok(Square::thin_from_boundary(top, bottom, left, right));
    }
    Ok(Square {
        kind: SquareKind::Composite {
            op: CompositionDirection::Horizontal,
            lhs: Box::new(x.clone()),
            rhs: Box::new(y.clone()),
        },
        top,
        bottom,
        left,
        right,
    })
}

/// Vertical composition `x` above `z`, sharing `bottom(x) = top(z)`.
pub fn vcompose(x: &Square, z: &Square) -> Result<Square, DoubleError> {
    if x.bottom != z.top {
        return Err(DoubleError::EdgeMismatch {
            op: "vertical composition",
            reason: format!("bottom edge {} vs top edge {}", x.bottom, z.top),
        });
    }
    if z.is_vertical_unit() {
        return Ok(x.clone());
    }
    if x.is_vertical_unit() {
        return Ok(z.clone());
    }
    let left = compose_path(&x.left, &z.left).expect("adjacent squares share corners");
    let right = compose_path(&x.right, &z.right).expect("adjacent squares share corners");
    let top = x.top.clone();
    let bottom = z.bottom.clone();
    if x.is_thin() && z.is_thin() {
        return Ok(Square::thin_from_boundary(top, bottom, left, right));
    }
    Ok(Square {
        kind: SquareKind::Composite {
            op: CompositionDirection::Vertical,
            lhs: Box::new(x.clone()),
            rhs: Box::new(z.clone()),
        },
        top,
        bottom,
        left,
        right,
    })
}

/// A rectangular array of squares with matching inner edges.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct GridExpr {
    cells: Vec<Vec<Square>>,
}

/// The four outer paths of a grid.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct GridBoundary {
    pub top: Path,
    pub bottom: Path,
    pub left: Path,
    pub right: Path,
}

impl GridExpr {
    /// Builds a grid from rows of cells, validating rectangularity and all
    /// inner edge matches.
    pub fn new(cells: Vec<Vec<Square>>) -> Result<Self, DoubleError> {
        if cells.is_empty() || cells[0].is_empty() {
            return Err(DoubleError::InvalidGrid {
                reason: "a grid needs at least one row and one column".to_string(),
            });
        }
        let cols = cells[0].len();
        for (r, row) in cells.iter().enumerate() {
            if row.len() != cols {
                return Err(DoubleError::InvalidGrid {
                    reason: format!("row {r} has {} cells, expected {cols}", row.len()),
                });
            }
        }
        for (r, row) in cells.iter().enumerate() {
            for (c, cell) in row.iter().enumerate() {
                if c + 1 < cols && cell.right != row[c + 1].left {
                    return Err(DoubleError::InvalidGrid {
                        reason: format!(
                            "cell ({r}, {c}) has right edge {} but ({r}, {}) has left edge {}",
                            cell.right,
                            c + 1,
                            row[c + 1].left
                        ),
                    });
                }
                if r + 1 < cells.len() && cell.bottom != cells[r + 1][c].top {
                    return Err(DoubleError::InvalidGrid {
                        reason: format!(
                            "cell ({r}, {c}) has bottom edge {} but ({}, {c}) has top edge {}",
                            cell.bottom,
                            r + 1,
                            cells[r + 1][c].top
                        ),
                    });
                }
            }
        }
        Ok(GridExpr { cells })
    }

    pub fn rows(&self) -> usize {
        self.cells.len()
    }

    pub fn cols(&self) -> usize {
        self.cells[0].len()
    }

    pub fn cell(&self, row: usize, col: usize) -> &Square {
        &self.cells[row][col]
    }

    pub fn all_thin(&self) -> bool {
        self.cells.iter().flatten().all(Square::is_thin)
    }

    /// Composes every cell into one square, rows first. The interchange law
    /// makes the grouping immaterial for the boundary; the kind records the
    /// actual tree.
    pub fn compose_all(&self) -> Result<Square, DoubleError> {
        let mut row_squares = Vec::with_capacity(self.rows());
        for row in &self.cells {
            let mut acc = row[0].clone();
            for cell in &row[1..] {
                acc = hcompose(&acc, cell)?;
            }
            row_squares.push(acc);
        }
        let mut acc = row_squares[0].clone();
        for square in &row_squares[1..] {
            acc = vcompose(&acc, square)?;
        }
        Ok(acc)
    }
}

/// Reads off the outer boundary of a grid by concatenation: row-0 tops,
/// last-row bottoms, column-0 lefts, last-column rights. By interchange
/// this equals the boundary of any full composition of the grid.
pub fn eval_grid_boundary(g: &GridExpr) -> GridBoundary {
    let concat = |paths: Vec<&Path>| -> Path {
        let mut acc = paths[0].clone();
        for p in &paths[1..] {
            acc = compose_path(&acc, p).expect("grid adjacency guarantees composability");
        }
        acc
    };
    let top = concat((0..g.cols()).map(|c| &g.cells[0][c]).map(|s| &s.top).collect());
    let bottom = concat(
        (0..g.cols())
            .map(|c| &g.cells[g.rows() - 1][c])
            .map(|s| &s.bottom)
            .collect(),
    );
    let left = concat((0..g.rows()).map(|r| &g.cells[r][0]).map(|s| &s.left).collect());
    let right = concat(
        (0..g.rows())
            .map(|r| &g.cells[r][g.cols() - 1])
            .map(|s| &s.right)
            .collect(),
    );
    GridBoundary {
        top,
        bottom,
        left,
        right,
    }
}

/// Evaluates an all-thin grid to the thin square on its boundary. Thin
/// squares are determined by their boundary, so this is the whole value.
pub fn thin_eval(g: &GridExpr) -> Result<Square, DoubleError> {
    for (r, row) in g.cells.iter().enumerate() {
        for (c, cell) in row.iter().enumerate() {
            if !cell.is_thin() {
                return Err(DoubleError::NonThinCell { row: r, col: c });
            }
        }
    }
    let b = eval_grid_boundary(g);
    Ok(Square::thin_from_boundary(b.top, b.bottom, b.left, b.right))
}

/// Verdict of the bounded grid equality search.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum GridVerdict {
    Equal,
    /// Neither proved equal within the depth bound nor refuted.
    NotProven,
    /// The outer boundaries differ; the grids cannot be equal.
    BoundaryMismatch,
}

/// True when deleting row `r` preserves grid validity and value: every cell
/// in the row is thin with equal top and bottom (the row composes to the
/// vertical identity on its top path) and the row's outer edges are
/// identities so the left/right boundary is unchanged.
fn row_deletable(g: &GridExpr, r: usize) -> bool {
    g.rows() > 1
        && g.cells[r].iter().all(|cell| cell.is_thin() && cell.top == cell.bottom)
        && g.cells[r][0].left.is_identity()
        && g.cells[r][g.cols() - 1].right.is_identity()
}

fn col_deletable(g: &GridExpr, c: usize) -> bool {
    g.cols() > 1
        && (0..g.rows()).all(|r| {
            let cell = &g.cells[r][c];
            cell.is_thin() && cell.left == cell.right
        })
        && g.cells[0][c].top.is_identity()
        && g.cells[g.rows() - 1][c].bottom.is_identity()
}

/// All grids reachable from `g` by one value-preserving reduction move:
/// deleting an identity row or column, or merging two adjacent rows or
/// columns whose cells pairwise compose to plain (non-composite) squares.
fn reduction_moves(g: &GridExpr) -> Vec<GridExpr> {
    let mut out = Vec::new();
    for r in 0..g.rows() {
        if row_deletable(g, r) {
            let mut cells = g.cells.clone();
            cells.remove(r);
            out.push(GridExpr::new(cells).expect("deleting an identity row keeps the grid valid"));
        }
    }
    for c in 0..g.cols() {
        if col_deletable(g, c) {
            let mut cells = g.cells.clone();
            for row in &mut cells {
                row.remove(c);
            }
            out.push(GridExpr::new(cells).expect("deleting an identity column keeps the grid valid"));
        }
    }
    'rows: for r in 0..g.rows().saturating_sub(1) {
        let mut merged_row = Vec::with_capacity(g.cols());
        for c in 0..g.cols() {
            match vcompose(&g.cells[r][c], &g.cells[r + 1][c]) {
                Ok(sq) if !matches!(sq.kind, SquareKind::Composite { .. }) => merged_row.push(sq),
                _ => continue 'rows,
            }
        }
        let mut cells = g.cells.clone();
        cells[r] = merged_row;
        cells.remove(r + 1);
        out.push(GridExpr::new(cells).expect("merging preserves grid validity"));
    }
    'cols: for c in 0..g.cols().saturating_sub(1) {
        let mut merged_col = Vec::with_capacity(g.rows());
        for r in 0..g.rows() {
            match hcompose(&g.cells[r][c], &g.cells[r][c + 1]) {
                Ok(sq) if !matches!(sq.kind, SquareKind::Composite { .. }) => merged_col.push(sq),
                _ => continue 'cols,
            }
        }
        let mut cells = g.cells.clone();
        for (r, row) in cells.iter_mut().enumerate() {
            row[c] = merged_col[r].clone();
            row.remove(c + 1);
        }
        out.push(GridExpr::new(cells).expect("merging preserves grid validity"));
    }
    out
}

/// Decides equality of two grids over a presentation, within bounds.
///
/// The outer boundaries are compared first, componentwise modulo relations
/// with `word_depth`; a definite difference is a sound `BoundaryMismatch`.
/// Two all-thin grids with equal boundaries are equal outright. Otherwise a
/// bidirectional breadth-first search over reduction moves runs from both
/// grids; meeting on a common reduct within `depth_limit` total moves
/// proves equality. Reduction moves strictly shrink grids, so the search
/// space is finite; insertion moves are realized implicitly by searching
/// from both sides.
pub fn grids_equal(
    pres: &CategoryPresentation,
    g1: &GridExpr,
    g2: &GridExpr,
    depth_limit: usize,
    word_depth: usize,
) -> Result<GridVerdict, DoubleError> {
    let b1 = eval_grid_boundary(g1);
    let b2 = eval_grid_boundary(g2);
    let mut undecided_boundary = false;
    for (p, q) in [
        (&b1.top, &b2.top),
        (&b1.bottom, &b2.bottom),
        (&b1.left, &b2.left),
        (&b1.right, &b2.right),
    ] {
        if p.src != q.src || p.tgt != q.tgt {
            return Ok(GridVerdict::BoundaryMismatch);
        }
        match paths_equal(pres, p, q, word_depth)? {
            TriState::Equal => {}
            TriState::NotEqualWithinBound => return Ok(GridVerdict::BoundaryMismatch),
            TriState::Inconclusive => undecided_boundary = true,
        }
    }
    if !undecided_boundary && g1.all_thin() && g2.all_thin() {
        return Ok(GridVerdict::Equal);
    }
    if g1 == g2 {
        return Ok(GridVerdict::Equal);
    }
    // Bidirectional search. Reduction preserves the outer boundary
    // syntactically, so a meet is possible only for syntactically equal
    // boundaries; the search is still run for its side effect of proving
    // equality, and everything else is NotProven.
    let mut dist: [HashMap<GridExpr, usize>; 2] = [
        HashMap::from([(g1.clone(), 0)]),
        HashMap::from([(g2.clone(), 0)]),
    ];
    let mut frontier: [VecDeque<GridExpr>; 2] =
        [VecDeque::from([g1.clone()]), VecDeque::from([g2.clone()])];
    let mut depth = [0usize; 2];
    while depth[0] + depth[1] < depth_limit {
        // Expand the smaller live frontier; stop when both are dead.
        let side = match (frontier[0].is_empty(), frontier[1].is_empty()) {
            (true, true) => break,
            (true, false) => 1,
            (false, true) => 0,
            (false, false) => usize::from(frontier[1].len() < frontier[0].len()),
        };
        let level: Vec<GridExpr> = frontier[side].drain(..).collect();
        depth[side] += 1;
        for grid in level {
            for next in reduction_moves(&grid) {
                if dist[1 - side].contains_key(&next) {
                    return Ok(GridVerdict::Equal);
                }
                if !dist[side].contains_key(&next) {
                    dist[side].insert(next.clone(), depth[side]);
                    frontier[side].push_back(next);
                }
            }
        }
    }
    Ok(GridVerdict::NotProven)
}

/// The six faces of a cube, indexed by the direction they collapse and the
/// side. For the cube on vertices `{0,1}^3`, face `(i, alpha)` fixes
/// coordinate `i` to `alpha`; of the remaining coordinates the smaller
/// indexes rows and the larger indexes columns.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct CubeFaces {
    faces: [Square; 6],
}

/// Which of the two composite faces of a cube to build.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum CubeSide {
    Left,
    Right,
}

impl CubeFaces {
    /// Takes the six faces in the order `(1,0), (1,1), (2,0), (2,1),
    /// (3,0), (3,1)` and validates the twelve edge-sharing constraints.
    pub fn new(faces: [Square; 6]) -> Result<Self, DoubleError> {
        let cube = CubeFaces { faces };
        // Each cube edge is shared by exactly two faces; the face boundary
        // conventions make these the twelve required equalities.
        let shared: [(&Path, &Path, &str); 12] = [
            (cube.face(1, 0).top(), cube.face(2, 0).top(), "edge (3)[x1=0, x2=0]"),
            (cube.face(1, 0).bottom(), cube.face(2, 1).top(), "edge (3)[x1=0, x2=1]"),
            (cube.face(1, 1).top(), cube.face(2, 0).bottom(), "edge (3)[x1=1, x2=0]"),
            (cube.face(1, 1).bottom(), cube.face(2, 1).bottom(), "edge (3)[x1=1, x2=1]"),
            (cube.face(1, 0).left(), cube.face(3, 0).top(), "edge (2)[x1=0, x3=0]"),
            (cube.face(1, 0).right(), cube.face(3, 1).top(), "edge (2)[x1=0, x3=1]"),
            (cube.face(1, 1).left(), cube.face(3, 0).bottom(), "edge (2)[x1=1, x3=0]"),
            (cube.face(1, 1).right(), cube.face(3, 1).bottom(), "edge (2)[x1=1, x3=1]"),
            (cube.face(2, 0).left(), cube.face(3, 0).left(), "edge (1)[x2=0, x3=0]"),
            (cube.face(2, 0).right(), cube.face(3, 1).left(), "edge (1)[x2=0, x3=1]"),
            (cube.face(2, 1).left(), cube.face(3, 0).right(), "edge (1)[x2=1, x3=0]"),
            (cube.face(2, 1).right(), cube.face(3, 1).right(), "edge (1)[x2=1, x3=1]"),
        ];
        for (p, q, which) in shared {
            if p != q {
                return Err(DoubleError::FaceMismatch {
                    reason: format!("{which} is {p} on one face and {q} on the other"),
                });
            }
        }
        Ok(cube)
    }

    /// Face `(direction, side)` with `direction` in `1..=3`, `side` 0 or 1.
    pub fn face(&self, direction: usize, side: usize) -> &Square {
        assert!((1..=3).contains(&direction) && side < 2, "face index out of range");
        &self.faces[(direction - 1) * 2 + side]
    }

    /// The cube obtained by degenerating one square in the third
    /// direction: both (3)-faces are the square itself and the remaining
    /// four faces are horizontal identities on its edges.
    pub fn degenerate(square: &Square) -> Self {
        CubeFaces {
            faces: [
                Square::eps2(square.top().clone()),
                Square::eps2(square.bottom().clone()),
                Square::eps2(square.left().clone()),
                Square::eps2(square.right().clone()),
                square.clone(),
                square.clone(),
            ],
        }
    }
}

/// Builds one of the two composite faces of a cube as a 3x3 grid.
///
/// The middle rows hold the actual faces; connections and degenerate
/// squares fill the four corner positions so that the grid composes. Both
/// sides have the same outer boundary, making them comparable:
/// the Left grid composes faces `(2,0)`, `(3,1)`, `(1,1)` and the Right
/// grid composes faces `(1,0)`, `(3,0)`, `(2,1)`.
pub fn cube_composite(faces: &CubeFaces, side: CubeSide) -> Result<GridExpr, DoubleError> {
    let d = |i, a| faces.face(i, a).clone();
    let rows = match side {
        CubeSide::Left => {
            let anchor = d(2, 0).top().src.clone();
            vec![
                vec![
                    Square::double_identity(anchor),
                    Square::eps1(d(2, 0).top().clone()),
                    Square::eps1(d(3, 1).top().clone()),
                ],
                vec![Square::eps2(d(2, 0).left().clone()), d(2, 0), d(3, 1)],
                vec![
                    Square::gamma_prime(d(1, 1).left().clone()),
                    d(1, 1),
                    Square::gamma(d(1, 1).right().clone()),
                ],
            ]
        }
        CubeSide::Right => {
            let anchor = d(2, 1).bottom().tgt.clone();
            vec![
                vec![
                    Square::gamma_prime(d(1, 0).left().clone()),
                    d(1, 0),
                    Square::gamma(d(1, 0).right().clone()),
                ],
                vec![d(3, 0), d(2, 1), Square::eps2(d(2, 1).right().clone())],
                vec![
                    Square::eps1(d(3, 0).bottom().clone()),
                    Square::eps1(d(2, 1).bottom().clone()),
                    Square::double_identity(anchor),
                ],
            ]
        }
    };
    GridExpr::new(rows).map_err(|e| DoubleError::NonComposableCube {
        reason: e.to_string(),
    })
}

/// Decides whether a cube commutes: whether its two composite faces are
/// equal as grids within the bounds.
pub fn is_commutative_cube(
    pres: &CategoryPresentation,
    faces: &CubeFaces,
    depth_limit: usize,
    word_depth: usize,
) -> Result<GridVerdict, DoubleError> {
    let left = cube_composite(faces, CubeSide::Left)?;
    let right = cube_composite(faces, CubeSide::Right)?;
    grids_equal(pres, &left, &right, depth_limit, word_depth)
}
