// Drives the command line in-process and prints its JSON report.
use torsion_pairs::cli::run;

fn main() {
    let args: Vec<String> = std::env::args().skip(1).collect();
    let argv = if args.is_empty() {
        vec!["tpcalc".into(), "indecs".into(), "--quiver".into(), "1>2<3".into()]
    } else {
        std::iter::once("tpcalc".to_string()).chain(args).collect()
    };
    let out = run(argv);
    print!("{}{}", out.stdout, out.stderr);
    std::process::exit(out.code);
}
