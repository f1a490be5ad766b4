//! Syntax tree for the input language. A document is a flat sequence of
//! named blocks; resolution into engine values happens separately, so block
//! order never matters.

/// A parsed input file.
#[derive(Debug, Clone, PartialEq, Eq, Default)]
pub struct Document {
    pub blocks: Vec<Block>,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum Block {
    Category(CategoryDef),
    Diagram(DiagramDef),
    Cocone(CoconeDef),
    Poset(PosetDef),
    Grid(GridDef),
    Cube(CubeDef),
    Message(MessageDef),
    Network(NetworkDef),
}

impl Block {
    /// The keyword introducing this block kind; also the sort key for
    /// canonical block order.
    pub fn kind(&self) -> &'static str {
        match self {
            Block::Category(_) => "category",
            Block::Cocone(_) => "cocone",
            Block::Cube(_) => "cube",
            Block::Diagram(_) => "diagram",
            Block::Grid(_) => "grid",
            Block::Message(_) => "message",
            Block::Network(_) => "network",
            Block::Poset(_) => "poset",
        }
    }

    pub fn name(&self) -> &str {
        match self {
            Block::Category(d) => &d.name,
            Block::Cocone(d) => &d.name,
            Block::Cube(d) => &d.name,
            Block::Diagram(d) => &d.name,
            Block::Grid(d) => &d.name,
            Block::Message(d) => &d.name,
            Block::Network(d) => &d.name,
            Block::Poset(d) => &d.name,
        }
    }
}

/// A path written either as `id(Object)` or as a dotted arrow chain.
#[derive(Debug, Clone, PartialEq, Eq, PartialOrd, Ord)]
pub enum PathExpr {
    Identity(String),
    /// Nonempty chain of arrow names, composed left to right.
    Gens(Vec<String>),
}

impl std::fmt::Display for PathExpr {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        match self {
            PathExpr::Identity(obj) => write!(f, "id({obj})"),
            PathExpr::Gens(gens) => f.write_str(&gens.join(".")),
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ArrowDecl {
    pub name: String,
    pub src: String,
    pub tgt: String,
}

#[derive(Debug, Clone, PartialEq, Eq, Default)]
pub struct TableDef {
    /// `identity Object = arrow` entries.
    pub identities: Vec<(String, String)>,
    /// `compose f g = h` entries.
    pub composites: Vec<((String, String), String)>,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct CategoryDef {
    pub name: String,
    pub objects: Vec<String>,
    pub arrows: Vec<ArrowDecl>,
    pub relations: Vec<(PathExpr, PathExpr)>,
    pub table: Option<TableDef>,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct EdgeDecl {
    pub name: String,
    pub src: String,
    pub tgt: String,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct DiagramDef {
    pub name: String,
    pub nodes: Vec<String>,
    pub edges: Vec<EdgeDecl>,
    /// `node = { elements }` entries.
    pub sets: Vec<(String, Vec<String>)>,
    /// `edge: x -> y, ...` entries.
    pub maps: Vec<(String, Vec<(String, String)>)>,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct CoconeDef {
    pub name: String,
    pub diagram: String,
    pub vertex: Vec<String>,
    /// `leg node: x -> v, ...` entries.
    pub legs: Vec<(String, Vec<(String, String)>)>,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum PosetBody {
    Extensional {
        carrier: Vec<String>,
        leq: Vec<(String, String)>,
    },
    Divisibility {
        lo: u64,
        hi: u64,
    },
    Numeric {
        lo: i64,
        hi: i64,
    },
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct PosetDef {
    pub name: String,
    pub body: PosetBody,
}

/// One 2-cell, as written in `cell`/`face` items.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum CellSpec {
    Id(String),
    Eps1(PathExpr),
    Eps2(PathExpr),
    Gamma(PathExpr),
    GammaPrime(PathExpr),
    Thin(BoundarySpec),
    Gen(String, BoundarySpec),
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct BoundarySpec {
    pub top: PathExpr,
    pub bottom: PathExpr,
    pub left: PathExpr,
    pub right: PathExpr,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct GridDef {
    pub name: String,
    pub category: String,
    pub rows: Option<usize>,
    pub cols: Option<usize>,
    pub cells: Vec<(usize, usize, CellSpec)>,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct CubeDef {
    pub name: String,
    pub category: String,
    /// `(direction, side, cell)` with direction in 1..=3 and side 0 or 1.
    pub faces: Vec<(usize, usize, CellSpec)>,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct MessageDef {
    pub name: String,
    pub bytes: Vec<u8>,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct NetworkDef {
    pub name: String,
    pub servers: Vec<String>,
    pub links: Vec<(String, String)>,
    pub source: Option<String>,
    pub receiver: Option<String>,
}
