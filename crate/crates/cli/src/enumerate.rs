use std::io::{self, Write};

use agree2x2::table::{count_tables, enumerate_range, write_tables_csv};

use crate::error::CliError;
use crate::provenance::{OutputFile, RunConfig};
use crate::EnumerateArgs;

pub fn run(args: &EnumerateArgs) -> Result<(), CliError> {
    if args.from < 1 || args.from > args.to {
        return Err(CliError::Usage(format!("invalid range --from {} --to {}", args.from, args.to)));
    }
    let expected = count_tables(args.from, args.to)?;
    let config = RunConfig { subcommand: "enumerate", from: Some(args.from), to: Some(args.to), ..Default::default() };
    let tables = enumerate_range(args.from, args.to)?;
    let rows = match &args.out {
        Some(path) => {
            let mut file = OutputFile::create(path)?;
            config.write_csv_header(file.writer(), &[]).map_err(CliError::io(path))?;
            let rows = write_tables_csv(file.writer(), tables)
                .map_err(|e| CliError::Data(format!("{}: {e}", path.display())))?;
            file.commit()?;
            rows
        }
        None => {
            let stdout = io::stdout();
            let mut lock = stdout.lock();
            config.write_csv_header(&mut lock, &[]).map_err(CliError::io("<stdout>"))?;
            let rows = write_tables_csv(&mut lock, tables).map_err(|e| CliError::Data(format!("<stdout>: {e}")))?;
            lock.flush().map_err(CliError::io("<stdout>"))?;
            rows
        }
    };
    debug_assert_eq!(rows as u128, expected);
    eprintln!("{rows} tables");
    Ok(())
}
