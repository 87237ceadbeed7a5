use thiserror::Error;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error("parse error: {0}")]
    Parse(String),
    #[error("relation {left} is declared more than once")]
    DuplicateRelation { left: String },
    #[error("no relation given for the pair {x}·{y}")]
    IncompleteRelations { x: String, y: String },
    #[error("relations between alphabets {i} and {j} are not a bijection: {hit} is hit twice")]
    RelationNotBijective { i: usize, j: usize, hit: String },
    #[error("rewriting is not confluent: {word} reduces to both {first} and {second}")]
    NotConfluent {
        word: String,
        first: String,
        second: String,
    },
    #[error("index error: {0}")]
    Index(String),
    #[error("letter name {0} occurs in both presentations")]
    SymbolClash(String),
    #[error("unknown catalog name {0:?}")]
    UnknownName(String),
    #[error("letter {0:?} is not in the presentation")]
    ForeignLetter(String),
    #[error("operands belong to different presentations")]
    PresentationMismatch,
    #[error("grade {requested} exceeds grade {available}")]
    GradeTooLarge {
        requested: String,
        available: String,
    },
    #[error("grade {requested} is below the required grade {required}")]
    GradeTooSmall { requested: String, required: String },
    #[error("presentation is not right rigid")]
    NotRightRigid,
    #[error("grades {0} and {1} overlap")]
    GradesOverlap(String, String),
    #[error("internal invariant violated: {0}")]
    Internal(String),
    #[error("the elements do not form a generalized prefix code: {0}")]
    NotACode(String),
    #[error("{0} is not a member of the code")]
    NotMember(String),
    #[error("expanding code is not maximal")]
    ExpanderNotMaximal,
    #[error("reducing code is not maximal")]
    ReducerNotMaximal,
    #[error("{0} is required for the reduction but is missing from the code")]
    NotASubset(String),
    #[error("code is not maximal")]
    NotMaximal,
    #[error("domain entries do not form a prefix code: {0}")]
    DomainNotCode(String),
    #[error("range entries do not form a prefix code: {0}")]
    RangeNotCode(String),
    #[error("pairing is not a bijection: {0}")]
    NotBijective(String),
    #[error("codes have different sizes ({0} vs {1})")]
    SizeMismatch(usize, usize),
    #[error("equality needs an effective presentation (status: {0})")]
    EffectivenessUnknown(String),
    #[error("tables are not compatible")]
    Incompatible,
    #[error("operation needs a non-zero table")]
    ZeroTable,
    #[error("no domain entry is an initial factor of {0}")]
    InsufficientDepth(String),
    #[error("no incomparability witness for {0} and {1} within {2}")]
    WitnessExhausted(String, String, String),
    #[error("the cylinder of {0} is not a box in the brick partition")]
    NotABrick(String),
    #[error("SVG output supports k = 1 or 2, not k = {0}")]
    SvgUnsupportedDimension(usize),
    #[error("count overflow: {0}")]
    Overflow(String),
}

pub type Result<T> = std::result::Result<T, Error>;
