use std::fs;
use std::io::{self, Read};

use cobordia::{morphism_from_json, DiagMorphism};

use crate::Failure;

/// Reads a morphism given inline as JSON, as a path to a JSON file, or as `-` for stdin.
pub fn read_morphism(arg: &str) -> Result<DiagMorphism, Failure> {
    let text = if arg == "-" {
        let mut buf = String::new();
        io::stdin()
            .read_to_string(&mut buf)
            .map_err(|e| Failure::input(format!("cannot read stdin: {e}")))?;
        buf
    } else if arg.trim_start().starts_with('{') {
        arg.to_string()
    } else {
        fs::read_to_string(arg).map_err(|e| Failure::input(format!("cannot read {arg}: {e}")))?
    };
    Ok(morphism_from_json(&text)?)
}

pub fn check_single_stdin(args: &[String]) -> Result<(), Failure> {
    if args.iter().filter(|a| *a == "-").count() > 1 {
        return Err(Failure::input("stdin can supply at most one morphism"));
    }
    Ok(())
}
