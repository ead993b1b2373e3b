use thiserror::Error;

pub type Result<T> = std::result::Result<T, Error>;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error("syntax error at byte {pos}: {msg}")]
    Syntax { pos: usize, msg: String },

    #[error("arity mismatch at byte {pos}: [{width}] needs {width} children, found {found}")]
    Arity { pos: usize, width: usize, found: usize },

    #[error("height mismatch: {0} vs {1}")]
    HeightMismatch(usize, usize),

    #[error("level mismatch: {0} vs {1}")]
    LevelMismatch(usize, usize),

    #[error("morphisms are not composable: {0}")]
    NotComposable(String),

    #[error("malformed morphism: {0}")]
    MalformedMorphism(String),

    #[error("malformed category: {0}")]
    MalformedCategory(String),

    #[error("not a functor: {0}")]
    NotAFunctor(String),

    #[error("evaluation failed: {0}")]
    Evaluation(String),

    #[error("flag invariant violated: {0}")]
    FlagInvariant(String),

    #[error("not a strict groupoid: {0}")]
    NotAGroupoid(String),

    #[error("unknown catalog entry: {0}")]
    UnknownCatalog(String),

    #[error("evaluation strategies disagree: {0}")]
    StrategyMismatch(String),

    #[error("invalid json: {0}")]
    Json(String),
}

impl From<serde_json::Error> for Error {
    fn from(e: serde_json::Error) -> Self {
        Error::Json(e.to_string())
    }
}
