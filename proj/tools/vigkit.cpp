// vigkit command-line front end.

#include <CLI11.hpp>

#include <iostream>
#include <map>

#include "vigkit/cli.hpp"

using namespace vigkit;

int main(int argc, char** argv) {
  CLI::App app{"Vigenere cipher with generated keystream, three-pass exchange and Kasiski analysis"};
  app.require_subcommand(1);

  cli::CliConfig cfg;
  std::string key, sender_key, recipient_key, listen, connect;
  std::size_t length = 0;
  std::optional<std::size_t> max_sessions;
  double timeout_secs = 10.0;
  kasiski::AttackOptions attack_opts;
  std::string freq_path;

  const std::map<std::string, KeyMode> modes{{"standard", KeyMode::StandardRepeat},
                                             {"generated", KeyMode::Generated}};
  const std::map<std::string, NonAlphaPolicy> non_alpha{{"preserve", NonAlphaPolicy::Preserve},
                                                        {"strip", NonAlphaPolicy::Strip}};
  const std::map<std::string, CasePolicy> cases{{"upper", CasePolicy::Upper},
                                                {"preserve", CasePolicy::Preserve}};

  auto add_text_options = [&](CLI::App* sub) {
    sub->add_option("--mode", cfg.mode, "standard|generated")
        ->transform(CLI::CheckedTransformer(modes, CLI::ignore_case));
    sub->add_option("--non-alpha", cfg.policy.non_alpha, "preserve|strip")
        ->transform(CLI::CheckedTransformer(non_alpha, CLI::ignore_case));
    sub->add_option("--case", cfg.policy.letter_case, "upper|preserve")
        ->transform(CLI::CheckedTransformer(cases, CLI::ignore_case));
  };
  auto add_io_options = [&](CLI::App* sub) {
    auto* in = sub->add_option("--in", cfg.in_path, "input file, - for stdin");
    sub->add_option("--text", cfg.text, "inline input text")->excludes(in);
    sub->add_option("--out", cfg.out_path, "output file, - for stdout");
  };

  auto* enc = app.add_subcommand("encrypt", "encrypt text");
  auto* dec = app.add_subcommand("decrypt", "decrypt text");
  for (auto* sub : {enc, dec}) {
    sub->add_option("--key", key, "key letters")->required();
    add_text_options(sub);
    add_io_options(sub);
  }

  auto* keygen = app.add_subcommand("keygen", "print the extended key stream");
  keygen->add_option("--key", key, "key letters")->required();
  keygen->add_option("--length", length, "stream length")->required();
  keygen->add_option("--out", cfg.out_path, "output file, - for stdout");
  add_text_options(keygen);

  auto* tp = app.add_subcommand("threepass", "three-pass exchange");
  tp->require_subcommand(1);
  auto* local = tp->add_subcommand("local", "run both parties in-process");
  local->add_option("--sender-key", sender_key)->required();
  local->add_option("--recipient-key", recipient_key)->required();
  local->add_flag("--machine", cfg.machine, "key=value output");
  add_text_options(local);
  add_io_options(local);

  auto* serve = tp->add_subcommand("serve", "act as recipient on a TCP listener");
  serve->add_option("--recipient-key,--key", recipient_key)->required();
  serve->add_option("--listen", listen, "HOST:PORT")->required();
  serve->add_option("--max-sessions", max_sessions, "exit after this many exchanges");
  serve->add_option("--out", cfg.out_path, "plaintext sink, - for stdout");
  serve->add_option("--timeout", timeout_secs, "idle timeout per connection (s)");
  serve->add_flag("--machine", cfg.machine, "newline after every plaintext");
  add_text_options(serve);

  auto* send = tp->add_subcommand("send", "act as sender against a responder");
  send->add_option("--sender-key,--key", sender_key)->required();
  send->add_option("--connect", connect, "HOST:PORT")->required();
  send->add_option("--timeout", timeout_secs, "seconds");
  send->add_option("--seed", cfg.seed, "deterministic session id");
  send->add_flag("--machine", cfg.machine, "key=value output");
  add_text_options(send);
  add_io_options(send);

  auto* atk = app.add_subcommand("attack", "Kasiski examination and key recovery");
  atk->add_flag("--machine", cfg.machine, "key=value output");
  atk->add_option("--threshold", attack_opts.chi_squared_threshold,
                  "chi-squared per letter below which the text counts as English");
  atk->add_option("--frequencies", freq_path, "letter frequency table file");
  add_text_options(atk);
  add_io_options(atk);

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    int rc = app.exit(e);
    return rc == 0 ? 0 : cli::kInvalidKey;
  }

  cfg.timeout = std::chrono::milliseconds(static_cast<long long>(timeout_secs * 1000));
  cli::Streams io{std::cin, std::cout, std::cerr};

  if (*enc) return cli::cmd_encrypt(key, cfg, io);
  if (*dec) return cli::cmd_decrypt(key, cfg, io);
  if (*keygen) return cli::cmd_keygen(key, length, cfg, io);
  if (*local) return cli::cmd_threepass_local(sender_key, recipient_key, cfg, io);
  if (*serve) return cli::cmd_threepass_serve(recipient_key, listen, max_sessions, cfg, io);
  if (*send) return cli::cmd_threepass_send(sender_key, connect, cfg, io);
  if (*atk) {
    if (!freq_path.empty()) {
      try {
        attack_opts.table = kasiski::load_frequency_table(freq_path);
      } catch (const Error& e) {
        std::cerr << "error: " << e.what() << '\n';
        return cli::exit_code_for(e.code());
      }
    }
    return cli::cmd_attack(cfg, attack_opts, io);
  }
  return cli::kInvalidKey;
}
