use trie_runs::formats::ParseError;
use trie_runs::Error;

pub const PARSE: u8 = 2;
pub const INVARIANT: u8 = 3;
pub const INTERNAL: u8 = 4;
const IO: u8 = 1;

/// An error with the process exit code it maps to.
#[derive(Debug)]
pub struct Fail {
    pub code: u8,
    pub message: String,
}

impl Fail {
    pub fn new(code: u8, message: impl Into<String>) -> Self {
        Fail { code, message: message.into() }
    }
}

impl From<ParseError> for Fail {
    fn from(e: ParseError) -> Self {
        Fail::new(PARSE, e.to_string())
    }
}

impl From<Error> for Fail {
    fn from(e: Error) -> Self {
        let code = match e {
            Error::DuplicateConfirmation { .. } => INTERNAL,
            ref e if e.is_invariant_violation() => INVARIANT,
            _ => PARSE,
        };
        Fail::new(code, e.to_string())
    }
}

impl From<std::io::Error> for Fail {
    fn from(e: std::io::Error) -> Self {
        Fail::new(IO, e.to_string())
    }
}
