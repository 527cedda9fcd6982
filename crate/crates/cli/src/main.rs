// Copyright 2026 The coherentqec Authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//     http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

mod args;
mod commands;
mod error;
mod output;

use std::process::ExitCode;

use clap::Parser;

use args::{Cli, Command, RunConfig};
use error::{CliError, CliResult};
use output::{emit, Format};

fn run(cli: &Cli) -> CliResult<()> {
    if let Some(n) = cli.threads {
        if n == 0 {
            return Err(CliError::Validation("--threads must be positive".into()));
        }
        rayon::ThreadPoolBuilder::new()
            .num_threads(n)
            .build_global()
            .map_err(|e| CliError::Validation(e.to_string()))?;
    }
    let cmd = &cli.command;
    let cfg = RunConfig::resolve(cmd.args())?;
    let (out, default) = match cmd {
        Command::Channel(_) => (commands::channel(&cfg)?, Format::Json),
        Command::Sweep(_) => (commands::sweep(&cfg)?, Format::Csv),
        Command::Threshold(_) => (commands::threshold_cmd(&cfg)?, Format::Json),
        Command::Basin(_) => (commands::basin_cmd(&cfg)?, Format::Csv),
        Command::Orbits(_) => (commands::orbits(&cfg)?, Format::Json),
        Command::DecoderDump(_) => (commands::decoder_dump(&cfg)?, Format::Csv),
    };
    let format = Format::parse(cfg.format.as_deref(), default)?;
    emit(cmd.name(), &cfg, out, format)
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    match run(&cli) {
        Ok(()) => ExitCode::SUCCESS,
        Err(e) => {
            eprintln!("error: {e}");
            ExitCode::from(e.exit_code() as u8)
        }
    }
}
