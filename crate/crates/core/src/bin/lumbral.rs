use lambda_umbral::cli::{self, CliError};

fn main() {
    match cli::execute(std::env::args_os()) {
        Ok(outcome) => {
            print!("{}", outcome.stdout);
            std::process::exit(outcome.exit_code);
        }
        Err(CliError::Usage(message)) => {
            let message = message.trim_end();
            eprintln!("{message}");
            std::process::exit(2);
        }
        Err(CliError::Internal(message)) => {
            eprintln!("error: {message}");
            std::process::exit(3);
        }
    }
}
