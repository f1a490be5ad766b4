//! Recursive-descent parser for the block language. Produces the syntax
//! tree only; name resolution and engine-level validation live in the
//! resolver so that blocks can reference each other in any order.

use crate::ast::*;
use crate::lexer::{lex, SyntaxError, Tok, Token};

pub fn parse(text: &str) -> Result<Document, SyntaxError> {
    let tokens = lex(text)?;
    let mut parser = Parser { tokens, pos: 0 };
    let mut blocks = Vec::new();
    while parser.peek().is_some() {
        blocks.push(parser.block()?);
    }
    Ok(Document { blocks })
}

struct Parser {
    tokens: Vec<Token>,
    pos: usize,
}

impl Parser {
    fn peek(&self) -> Option<&Token> {
        self.tokens.get(self.pos)
    }

    fn here(&self) -> (usize, usize) {
        match self.tokens.get(self.pos) {
            Some(t) => (t.line, t.col),
            None => self
                .tokens
                .last()
                .map(|t| (t.line, t.col + 1))
                .unwrap_or((1, 1)),
        }
    }

    fn fail<T>(&self, message: impl Into<String>) -> Result<T, SyntaxError> {
        let (line, col) = self.here();
        Err(SyntaxError {
            line,
            col,
            message: message.into(),
        })
    }

    fn next(&mut self, wanted: &str) -> Result<Token, SyntaxError> {
        match self.tokens.get(self.pos) {
            Some(t) => {
                self.pos += 1;
                Ok(t.clone())
            }
            None => self.fail(format!("expected {wanted}, found end of input")),
        }
    }

    fn expect(&mut self, tok: Tok) -> Result<(), SyntaxError> {
        let found = self.next(&tok.to_string())?;
        if found.tok == tok {
            Ok(())
        } else {
            Err(SyntaxError {
                line: found.line,
                col: found.col,
                message: format!("expected {tok}, found {}", found.tok),
            })
        }
    }

    /// Consumes the next token, which must be a word, and returns it.
    fn word(&mut self, wanted: &str) -> Result<String, SyntaxError> {
        let found = self.next(wanted)?;
        match found.tok {
            Tok::Word(w) => Ok(w),
            other => Err(SyntaxError {
                line: found.line,
                col: found.col,
                message: format!("expected {wanted}, found {other}"),
            }),
        }
    }

    /// Consumes a specific keyword.
    fn keyword(&mut self, kw: &str) -> Result<(), SyntaxError> {
        let found = self.next(&format!("`{kw}`"))?;
        match &found.tok {
            Tok::Word(w) if w == kw => Ok(()),
            other => Err(SyntaxError {
                line: found.line,
                col: found.col,
                message: format!("expected `{kw}`, found {other}"),
            }),
        }
    }

    fn at(&self, tok: &Tok) -> bool {
        self.peek().map(|t| &t.tok == tok).unwrap_or(false)
    }

    fn at_word(&self, word: &str) -> bool {
        matches!(self.peek(), Some(Token { tok: Tok::Word(w), .. }) if w == word)
    }

    fn eat(&mut self, tok: &Tok) -> bool {
        if self.at(tok) {
            self.pos += 1;
            true
        } else {
            false
        }
    }

    /// Optional item terminator.
    fn opt_semi(&mut self) {
        while self.eat(&Tok::Semi) {}
    }

    fn int<T: std::str::FromStr>(&mut self, wanted: &str) -> Result<T, SyntaxError> {
        let (line, col) = self.here();
        let w = self.word(wanted)?;
        w.parse().map_err(|_| SyntaxError {
            line,
            col,
            message: format!("expected {wanted}, found `{w}`"),
        })
    }

    /// `id(Object)` or a dotted chain of arrow names.
    fn path_expr(&mut self) -> Result<PathExpr, SyntaxError> {
        let first = self.word("a path")?;
        if first == "id" && self.at(&Tok::LParen) {
            self.expect(Tok::LParen)?;
            let obj = self.word("an object name")?;
            self.expect(Tok::RParen)?;
            return Ok(PathExpr::Identity(obj));
        }
        let mut gens = vec![first];
        while self.eat(&Tok::Dot) {
            gens.push(self.word("an arrow name")?);
        }
        Ok(PathExpr::Gens(gens))
    }

    /// Words up to the next `;` or `}`, with optional commas between them.
    fn word_list(&mut self) -> Result<Vec<String>, SyntaxError> {
        let mut words = Vec::new();
        while matches!(self.peek(), Some(Token { tok: Tok::Word(_), .. })) {
            words.push(self.word("a name")?);
            self.eat(&Tok::Comma);
        }
        Ok(words)
    }

    /// `{ elem, elem, ... }`, possibly empty.
    fn elem_set(&mut self) -> Result<Vec<String>, SyntaxError> {
        self.expect(Tok::LBrace)?;
        let mut elems = Vec::new();
        if !self.at(&Tok::RBrace) {
            loop {
                elems.push(self.word("an element")?);
                if !self.eat(&Tok::Comma) {
                    break;
                }
            }
        }
        self.expect(Tok::RBrace)?;
        Ok(elems)
    }

    /// `x -> y (, x -> y)*`.
    fn assignments(&mut self) -> Result<Vec<(String, String)>, SyntaxError> {
        let mut out = Vec::new();
        loop {
            let from = self.word("an element")?;
            self.expect(Tok::Arrow)?;
            let to = self.word("an element")?;
            out.push((from, to));
            if !self.eat(&Tok::Comma) {
                break;
            }
        }
        Ok(out)
    }

    fn block(&mut self) -> Result<Block, SyntaxError> {
        let kind = self.word("a block keyword")?;
        match kind.as_str() {
            "category" => self.category(),
            "diagram" => self.diagram(),
            "cocone" => self.cocone(),
            "poset" => self.poset(),
            "grid" => self.grid(),
            "cube" => self.cube(),
            "message" => self.message(),
            "network" => self.network(),
            other => self.fail(format!(
                "unknown block keyword `{other}`; expected one of category, \
                 cocone, cube, diagram, grid, message, network, poset"
            )),
        }
    }

    fn category(&mut self) -> Result<Block, SyntaxError> {
        let name = self.word("a category name")?;
        self.expect(Tok::LBrace)?;
        let mut def = CategoryDef {
            name,
            objects: Vec::new(),
            arrows: Vec::new(),
            relations: Vec::new(),
            table: None,
        };
        while !self.eat(&Tok::RBrace) {
            let item = self.word("a category item (objects, arrows, relations, table)")?;
            match item.as_str() {
                "objects" => {
                    def.objects.extend(self.word_list()?);
                    self.opt_semi();
                }
                "arrows" => {
                    loop {
                        let name = self.word("an arrow name")?;
                        self.expect(Tok::Colon)?;
                        let src = self.word("a source object")?;
                        self.expect(Tok::Arrow)?;
                        let tgt = self.word("a target object")?;
                        def.arrows.push(ArrowDecl { name, src, tgt });
                        if !self.eat(&Tok::Comma) {
                            break;
                        }
                    }
                    self.opt_semi();
                }
                "relations" => {
                    loop {
                        let lhs = self.path_expr()?;
                        self.expect(Tok::Eq)?;
                        let rhs = self.path_expr()?;
                        def.relations.push((lhs, rhs));
                        if !self.eat(&Tok::Comma) {
                            break;
                        }
                    }
                    self.opt_semi();
                }
                "table" => {
                    if def.table.is_some() {
                        return self.fail("table given twice");
                    }
                    def.table = Some(self.table()?);
                    self.opt_semi();
                }
                other => {
                    return self.fail(format!(
                        "unknown category item `{other}`; expected objects, arrows, relations, or table"
                    ))
                }
            }
        }
        Ok(Block::Category(def))
    }

    fn table(&mut self) -> Result<TableDef, SyntaxError> {
        self.expect(Tok::LBrace)?;
        let mut table = TableDef::default();
        while !self.eat(&Tok::RBrace) {
            let item = self.word("a table item (identity, compose)")?;
            match item.as_str() {
                "identity" => {
                    let obj = self.word("an object name")?;
                    self.expect(Tok::Eq)?;
                    let arrow = self.word("an arrow name")?;
                    table.identities.push((obj, arrow));
                    self.opt_semi();
                }
                "compose" => {
                    let f = self.word("an arrow name")?;
                    let g = self.word("an arrow name")?;
                    self.expect(Tok::Eq)?;
                    let h = self.word("an arrow name")?;
                    table.composites.push(((f, g), h));
                    self.opt_semi();
                }
                other => {
                    return self.fail(format!(
                        "unknown table item `{other}`; expected identity or compose"
                    ))
                }
            }
        }
        Ok(table)
    }

    fn diagram(&mut self) -> Result<Block, SyntaxError> {
        let name = self.word("a diagram name")?;
        self.keyword("over")?;
        self.keyword("shape")?;
        let mut def = DiagramDef {
            name,
            nodes: Vec::new(),
            edges: Vec::new(),
            sets: Vec::new(),
            maps: Vec::new(),
        };
        self.expect(Tok::LBrace)?;
        while !self.eat(&Tok::RBrace) {
            let item = self.word("a shape item (nodes, edge)")?;
            match item.as_str() {
                "nodes" => {
                    def.nodes.extend(self.word_list()?);
                    self.opt_semi();
                }
                "edge" => {
                    let name = self.word("an edge name")?;
                    self.expect(Tok::Colon)?;
                    let src = self.word("a source node")?;
                    self.expect(Tok::Arrow)?;
                    let tgt = self.word("a target node")?;
                    def.edges.push(EdgeDecl { name, src, tgt });
                    self.opt_semi();
                }
                other => {
                    return self.fail(format!(
                        "unknown shape item `{other}`; expected nodes or edge"
                    ))
                }
            }
        }
        while self.at_word("sets") || self.at_word("maps") {
            let section = self.word("a section")?;
            self.expect(Tok::LBrace)?;
            while !self.eat(&Tok::RBrace) {
                if section == "sets" {
                    let node = self.word("a node name")?;
                    self.expect(Tok::Eq)?;
                    let elems = self.elem_set()?;
                    def.sets.push((node, elems));
                    self.opt_semi();
                } else {
                    let edge = self.word("an edge name")?;
                    self.expect(Tok::Colon)?;
                    let assigns = self.assignments()?;
                    def.maps.push((edge, assigns));
                    self.opt_semi();
                }
            }
        }
        Ok(Block::Diagram(def))
    }

    fn cocone(&mut self) -> Result<Block, SyntaxError> {
        let name = self.word("a cocone name")?;
        self.keyword("over")?;
        let diagram = self.word("a diagram name")?;
        self.expect(Tok::LBrace)?;
        let mut def = CoconeDef {
            name,
            diagram,
            vertex: Vec::new(),
            legs: Vec::new(),
        };
        let mut saw_vertex = false;
        while !self.eat(&Tok::RBrace) {
            let item = self.word("a cocone item (vertex, leg)")?;
            match item.as_str() {
                "vertex" => {
                    if saw_vertex {
                        return self.fail("vertex given twice");
                    }
                    saw_vertex = true;
                    self.expect(Tok::Eq)?;
                    def.vertex = self.elem_set()?;
                    self.opt_semi();
                }
                "leg" => {
                    let node = self.word("a node name")?;
                    self.expect(Tok::Colon)?;
                    let assigns = self.assignments()?;
                    def.legs.push((node, assigns));
                    self.opt_semi();
                }
                other => {
                    return self.fail(format!(
                        "unknown cocone item `{other}`; expected vertex or leg"
                    ))
                }
            }
        }
        Ok(Block::Cocone(def))
    }

    fn poset(&mut self) -> Result<Block, SyntaxError> {
        let name = self.word("a poset name")?;
        self.expect(Tok::LBrace)?;
        let mut builder: Option<PosetBody> = None;
        let mut carrier: Vec<String> = Vec::new();
        let mut leq: Vec<(String, String)> = Vec::new();
        let mut extensional = false;
        while !self.eat(&Tok::RBrace) {
            let item = self.word("a poset item (carrier, leq, divisibility, numeric)")?;
            match item.as_str() {
                "carrier" => {
                    extensional = true;
                    self.expect(Tok::Eq)?;
                    carrier.extend(self.elem_set()?);
                    self.opt_semi();
                }
                "leq" => {
                    extensional = true;
                    let a = self.word("an element")?;
                    let b = self.word("an element")?;
                    leq.push((a, b));
                    self.opt_semi();
                }
                "divisibility" => {
                    if builder.is_some() {
                        return self.fail("a poset takes a single range builder");
                    }
                    let lo = self.int("a lower bound")?;
                    self.expect(Tok::DotDot)?;
                    let hi = self.int("an upper bound")?;
                    builder = Some(PosetBody::Divisibility { lo, hi });
                    self.opt_semi();
                }
                "numeric" => {
                    if builder.is_some() {
                        return self.fail("a poset takes a single range builder");
                    }
                    let lo = self.int("a lower bound")?;
                    self.expect(Tok::DotDot)?;
                    let hi = self.int("an upper bound")?;
                    builder = Some(PosetBody::Numeric { lo, hi });
                    self.opt_semi();
                }
                other => {
                    return self.fail(format!(
                        "unknown poset item `{other}`; expected carrier, leq, divisibility, or numeric"
                    ))
                }
            }
        }
        let body = match (builder, extensional) {
            (Some(_), true) => {
                return self.fail("a poset is either a range builder or carrier/leq items, not both")
            }
            (Some(b), false) => b,
            (None, _) => PosetBody::Extensional { carrier, leq },
        };
        Ok(Block::Poset(PosetDef { name, body }))
    }

    fn cell_spec(&mut self) -> Result<CellSpec, SyntaxError> {
        if self.at_word("id") {
            // Disambiguates the double identity `id(P)` from an arrow
            // called `id`; `id` not followed by `(` falls through to the
            // path forms below.
            let save = self.pos;
            self.pos += 1;
            if self.at(&Tok::LParen) {
                self.expect(Tok::LParen)?;
                let obj = self.word("an object name")?;
                self.expect(Tok::RParen)?;
                return Ok(CellSpec::Id(obj));
            }
            self.pos = save;
        }
        let head = self.word("a cell form (id, eps1, eps2, gamma, gammap, thin, gen)")?;
        match head.as_str() {
            "eps1" => Ok(CellSpec::Eps1(self.path_expr()?)),
            "eps2" => Ok(CellSpec::Eps2(self.path_expr()?)),
            "gamma" => Ok(CellSpec::Gamma(self.path_expr()?)),
            "gammap" => Ok(CellSpec::GammaPrime(self.path_expr()?)),
            "thin" => Ok(CellSpec::Thin(self.boundary()?)),
            "gen" => {
                let name = self.word("a generator name")?;
                Ok(CellSpec::Gen(name, self.boundary()?))
            }
            other => self.fail(format!(
                "unknown cell form `{other}`; expected id, eps1, eps2, gamma, gammap, thin, or gen"
            )),
        }
    }

    fn boundary(&mut self) -> Result<BoundarySpec, SyntaxError> {
        self.keyword("top")?;
        let top = self.path_expr()?;
        self.keyword("bottom")?;
        let bottom = self.path_expr()?;
        self.keyword("left")?;
        let left = self.path_expr()?;
        self.keyword("right")?;
        let right = self.path_expr()?;
        Ok(BoundarySpec {
            top,
            bottom,
            left,
            right,
        })
    }

    fn grid(&mut self) -> Result<Block, SyntaxError> {
        let name = self.word("a grid name")?;
        self.keyword("over")?;
        let category = self.word("a category name")?;
        self.expect(Tok::LBrace)?;
        let mut def = GridDef {
            name,
            category,
            rows: None,
            cols: None,
            cells: Vec::new(),
        };
        while !self.eat(&Tok::RBrace) {
            let item = self.word("a grid item (rows, cols, cell)")?;
            match item.as_str() {
                "rows" => {
                    if def.rows.is_some() {
                        return self.fail("rows given twice");
                    }
                    def.rows = Some(self.int("a row count")?);
                    self.opt_semi();
                }
                "cols" => {
                    if def.cols.is_some() {
                        return self.fail("cols given twice");
                    }
                    def.cols = Some(self.int("a column count")?);
                    self.opt_semi();
                }
                "cell" => {
                    let row = self.int("a row index")?;
                    let col = self.int("a column index")?;
                    self.expect(Tok::Eq)?;
                    let spec = self.cell_spec()?;
                    def.cells.push((row, col, spec));
                    self.opt_semi();
                }
                other => {
                    return self.fail(format!(
                        "unknown grid item `{other}`; expected rows, cols, or cell"
                    ))
                }
            }
        }
        Ok(Block::Grid(def))
    }

    fn cube(&mut self) -> Result<Block, SyntaxError> {
        let name = self.word("a cube name")?;
        self.keyword("over")?;
        let category = self.word("a category name")?;
        self.expect(Tok::LBrace)?;
        let mut faces = Vec::new();
        while !self.eat(&Tok::RBrace) {
            self.keyword("face")?;
            let direction = self.int("a direction (1, 2, or 3)")?;
            let side = self.int("a side (0 or 1)")?;
            self.expect(Tok::Eq)?;
            let spec = self.cell_spec()?;
            faces.push((direction, side, spec));
            self.opt_semi();
        }
        Ok(Block::Cube(CubeDef {
            name,
            category,
            faces,
        }))
    }

    fn message(&mut self) -> Result<Block, SyntaxError> {
        let name = self.word("a message name")?;
        self.expect(Tok::LBrace)?;
        let mut bytes: Option<Vec<u8>> = None;
        while !self.eat(&Tok::RBrace) {
            self.keyword("bytes")?;
            if bytes.is_some() {
                return self.fail("bytes given twice");
            }
            let found = self.next("a string literal")?;
            match found.tok {
                Tok::Str(b) => bytes = Some(b),
                other => {
                    return Err(SyntaxError {
                        line: found.line,
                        col: found.col,
                        message: format!("expected a string literal, found {other}"),
                    })
                }
            }
            self.opt_semi();
        }
        match bytes {
            Some(bytes) => Ok(Block::Message(MessageDef { name, bytes })),
            None => self.fail("message block needs a bytes item"),
        }
    }

    fn network(&mut self) -> Result<Block, SyntaxError> {
        let name = self.word("a network name")?;
        self.expect(Tok::LBrace)?;
        let mut def = NetworkDef {
            name,
            servers: Vec::new(),
            links: Vec::new(),
            source: None,
            receiver: None,
        };
        while !self.eat(&Tok::RBrace) {
            let item = self.word("a network item (servers, source, receiver, link)")?;
            match item.as_str() {
                "servers" => {
                    def.servers.extend(self.word_list()?);
                    self.opt_semi();
                }
                "source" => {
                    if def.source.is_some() {
                        return self.fail("source given twice");
                    }
                    def.source = Some(self.word("a server name")?);
                    self.opt_semi();
                }
                "receiver" => {
                    if def.receiver.is_some() {
                        return self.fail("receiver given twice");
                    }
                    def.receiver = Some(self.word("a server name")?);
                    self.opt_semi();
                }
                "link" => {
                    let from = self.word("a server name")?;
                    self.expect(Tok::Arrow)?;
                    let to = self.word("a server name")?;
                    def.links.push((from, to));
                    self.opt_semi();
                }
                other => {
                    return self.fail(format!(
                        "unknown network item `{other}`; expected servers, source, receiver, or link"
                    ))
                }
            }
        }
        Ok(Block::Network(def))
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn category_with_two_objects_and_one_arrow() {
        let doc = parse("category C { objects X Y; arrows f: X -> Y; }").unwrap();
        assert_eq!(doc.blocks.len(), 1);
        let Block::Category(def) = &doc.blocks[0] else {
            panic!("expected a category block");
        };
        assert_eq!(def.objects, ["X", "Y"]);
        assert_eq!(def.arrows.len(), 1);
        assert_eq!(def.arrows[0].name, "f");
    }

    #[test]
    fn diagram_sections_parse_without_trailing_semicolons() {
        let doc = parse(
            "diagram D over shape { nodes i j; edge a: i -> j } \
             sets { i = {w}; j = {w, x} } maps { a: w -> w }",
        )
        .unwrap();
        let Block::Diagram(def) = &doc.blocks[0] else {
            panic!("expected a diagram block");
        };
        assert_eq!(def.nodes, ["i", "j"]);
        assert_eq!(def.sets[1].1, ["w", "x"]);
        assert_eq!(def.maps[0].1, [("w".to_string(), "w".to_string())]);
    }

    #[test]
    fn poset_builder_and_extensional_forms() {
        let doc = parse("poset P { divisibility 1 .. 60; } poset Q { carrier = {a, b}; leq a b; }")
            .unwrap();
        assert_eq!(doc.blocks.len(), 2);
        let Block::Poset(p) = &doc.blocks[0] else { panic!() };
        assert_eq!(p.body, PosetBody::Divisibility { lo: 1, hi: 60 });
    }

    #[test]
    fn mixing_poset_forms_is_rejected() {
        let err = parse("poset P { carrier = {a}; numeric 1 .. 3; }").unwrap_err();
        assert!(err.message.contains("not both") || err.message.contains("single range"));
    }

    #[test]
    fn grid_cells_parse_every_form() {
        let doc = parse(
            "grid G over C { rows 1; cols 4; \
             cell 0 0 = id(P); cell 0 1 = eps1 a.b; \
             cell 0 2 = thin top a bottom b left id(P) right c; \
             cell 0 3 = gen s top a bottom b left c right d; }",
        )
        .unwrap();
        let Block::Grid(def) = &doc.blocks[0] else { panic!() };
        assert_eq!(def.cells.len(), 4);
        assert!(matches!(def.cells[0].2, CellSpec::Id(_)));
        assert!(matches!(def.cells[3].2, CellSpec::Gen(_, _)));
    }

    #[test]
    fn errors_carry_positions() {
        let err = parse("category C {\n  objects X;\n  widgets Y;\n}").unwrap_err();
        assert_eq!(err.line, 3);
        assert!(err.message.contains("widgets"));
    }

    #[test]
    fn unknown_block_keyword_is_rejected() {
        let err = parse("functor F { }").unwrap_err();
        assert!(err.message.contains("unknown block keyword"));
    }
}
