// Copyright 2026 kaonlab Contributors
// SPDX-License-Identifier: Apache-2.0

fn main() {
    let env = std::env::var(kaonlab_cli::CONFIG_ENV).ok();
    let code = kaonlab_cli::run(
        std::env::args_os(),
        env.as_deref(),
        &mut std::io::stdout().lock(),
        &mut std::io::stderr().lock(),
    );
    std::process::exit(code);
}
