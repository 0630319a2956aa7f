#pragma once

#include <chrono>
#include <cstdint>
#include <fstream>
#include <iomanip>
#include <iostream>
#include <iterator>
#include <optional>
#include <sstream>
#include <string>

#include "vigkit/cipher.hpp"
#include "vigkit/kasiski.hpp"
#include "vigkit/threepass.hpp"
#include "vigkit/transport.hpp"

namespace vigkit::cli {

enum ExitCode : int {
  kOk = 0,
  kResisted = 1,  ///< attack only
  kInvalidKey = 2,
  kIoError = 3,
  kProtocolError = 4,
};

inline int exit_code_for(Errc code) {
  switch (code) {
    case Errc::InvalidCharacter:
    case Errc::EmptyKey:
    case Errc::InvalidArgument:
      return kInvalidKey;
    case Errc::IoError:
      return kIoError;
    default:
      return kProtocolError;
  }
}

struct CliConfig {
  KeyMode mode = KeyMode::Generated;
  TextPolicy policy{};
  std::optional<std::string> in_path;  ///< "-" or absent: stdin (unless text is set)
  std::optional<std::string> text;     ///< inline input
  std::string out_path = "-";
  std::chrono::milliseconds timeout = kDefaultTimeout;
  std::optional<std::uint64_t> seed;
  bool machine = false;
};

struct Streams {
  std::istream& in;
  std::ostream& out;
  std::ostream& err;
};

inline std::string read_input(const CliConfig& cfg, std::istream& stdin_stream) {
  if (cfg.text && cfg.in_path)
    throw Error(Errc::InvalidArgument, "--in/--text", "give only one input source");
  if (cfg.text) return *cfg.text;
  if (!cfg.in_path || *cfg.in_path == "-")
    return std::string(std::istreambuf_iterator<char>(stdin_stream), {});
  std::ifstream f(*cfg.in_path, std::ios::binary);
  if (!f) throw Error(Errc::IoError, *cfg.in_path, "cannot open input");
  std::string data((std::istreambuf_iterator<char>(f)), {});
  if (f.bad()) throw Error(Errc::IoError, *cfg.in_path, "read failed");
  return data;
}

inline void write_output(const CliConfig& cfg, const std::string& data, std::ostream& stdout_stream) {
  if (cfg.out_path == "-") {
    stdout_stream << data;
    stdout_stream.flush();
    return;
  }
  std::ofstream f(cfg.out_path, std::ios::binary | std::ios::trunc);
  if (!f) throw Error(Errc::IoError, cfg.out_path, "cannot open output");
  f << data;
  if (!f) throw Error(Errc::IoError, cfg.out_path, "write failed");
}

/// Backslash escapes for key=value output.
inline std::string escape_value(std::string_view s) {
  std::string out;
  for (char c : s) {
    switch (c) {
      case '\\': out += "\\\\"; break;
      case '\n': out += "\\n"; break;
      case '\r': out += "\\r"; break;
      case '\t': out += "\\t"; break;
      default: out += c;
    }
  }
  return out;
}

template <class Fn>
int guarded(std::ostream& err, Fn&& fn) {
  try {
    return fn();
  } catch (const Error& e) {
    err << "error: " << e.what() << '\n';
    return exit_code_for(e.code());
  }
}

inline int cmd_encrypt(const std::string& key, const CliConfig& cfg, Streams io, bool decrypting = false) {
  return guarded(io.err, [&] {
    auto user_key = parse_key(key);
    auto text = MessageText::parse(read_input(cfg, io.in), cfg.policy);
    auto result = decrypting ? decrypt(text, user_key, cfg.mode) : encrypt(text, user_key, cfg.mode);
    write_output(cfg, result.str(), io.out);
    return int{kOk};
  });
}

inline int cmd_decrypt(const std::string& key, const CliConfig& cfg, Streams io) {
  return cmd_encrypt(key, cfg, io, true);
}

inline int cmd_keygen(const std::string& key, std::size_t length, const CliConfig& cfg, Streams io) {
  return guarded(io.err, [&] {
    write_output(cfg, extend_key(key, length, cfg.mode).str() + "\n", io.out);
    return int{kOk};
  });
}

inline int cmd_threepass_local(const std::string& sender_key, const std::string& recipient_key,
                               const CliConfig& cfg, Streams io) {
  return guarded(io.err, [&] {
    auto t = run_local_exchange(read_input(cfg, io.in), sender_key, recipient_key, cfg.mode, cfg.policy);
    std::ostringstream os;
    if (cfg.machine) {
      os << "first=" << escape_value(t.first.str()) << '\n'
         << "second=" << escape_value(t.second.str()) << '\n'
         << "third=" << escape_value(t.third.str()) << '\n'
         << "plaintext=" << escape_value(t.recovered.str()) << '\n';
    } else {
      os << "First Ciphertext  : " << t.first.str() << '\n'
         << "Second Ciphertext : " << t.second.str() << '\n'
         << "Third Ciphertext  : " << t.third.str() << '\n'
         << "Plaintext         : " << t.recovered.str() << '\n';
    }
    write_output(cfg, os.str(), io.out);
    return int{kOk};
  });
}

/// Serves until `max_sessions` exchanges complete (forever when absent).
/// Each recovered plaintext goes to the output sink; a status line with the
/// bound address goes to the error stream.
inline int cmd_threepass_serve(const std::string& recipient_key, const std::string& listen,
                               std::optional<std::size_t> max_sessions, const CliConfig& cfg,
                               Streams io) {
  return guarded(io.err, [&] {
    std::optional<std::ofstream> file;
    if (cfg.out_path != "-") {
      file.emplace(cfg.out_path, std::ios::binary | std::ios::trunc);
      if (!*file) throw Error(Errc::IoError, cfg.out_path, "cannot open output");
    }
    std::ostream& sink = file ? static_cast<std::ostream&>(*file) : io.out;

    ResponderConfig rc;
    rc.listen_address = listen;
    rc.recipient_key = recipient_key;
    rc.mode = cfg.mode;
    rc.policy = cfg.policy;
    rc.timeout = cfg.timeout;
    rc.max_sessions = max_sessions;
    rc.sink = [&](const SessionId&, const std::string& plaintext) {
      sink << plaintext;
      if (cfg.machine || plaintext.empty() || plaintext.back() != '\n') sink << '\n';
      sink.flush();
    };
    Responder responder(std::move(rc));
    auto hp = net::parse_host_port(listen);
    io.err << "listening on " << (hp.host.empty() ? "*" : hp.host) << ':' << responder.port() << std::endl;
    responder.serve();
    return int{kOk};
  });
}

inline int cmd_threepass_send(const std::string& sender_key, const std::string& connect,
                              const CliConfig& cfg, Streams io) {
  return guarded(io.err, [&] {
    InitiatorConfig ic;
    ic.connect_address = connect;
    ic.sender_key = sender_key;
    ic.plaintext = read_input(cfg, io.in);
    ic.mode = cfg.mode;
    ic.policy = cfg.policy;
    ic.timeout = cfg.timeout;
    ic.seed = cfg.seed;
    auto t = run_initiator(ic);
    std::ostringstream os;
    if (cfg.machine) {
      os << "session_id=" << t.session_id.str() << '\n'
         << "first=" << escape_value(t.first.str()) << '\n'
         << "second=" << escape_value(t.second.str()) << '\n'
         << "third=" << escape_value(t.third.str()) << '\n';
    } else {
      os << "Session           : " << t.session_id.str() << '\n'
         << "First Ciphertext  : " << t.first.str() << '\n'
         << "Second Ciphertext : " << t.second.str() << '\n'
         << "Third Ciphertext  : " << t.third.str() << '\n';
    }
    write_output(cfg, os.str(), io.out);
    return int{kOk};
  });
}

inline std::string format_report(const kasiski::KasiskiReport& r, bool machine) {
  std::ostringstream os;
  os << std::fixed << std::setprecision(4);
  if (machine) {
    os << "verdict=" << kasiski::verdict_name(r.verdict) << '\n';
    os << "letters=" << r.letter_count << '\n';
    os << "repeats=" << r.findings.size() << '\n';
    os << "candidates=";
    for (std::size_t i = 0; i < r.key_length_candidates.size(); ++i)
      os << (i ? "," : "") << r.key_length_candidates[i].length << ':' << r.key_length_candidates[i].score;
    os << '\n';
    for (auto [len, ioc] : r.ioc_by_length) os << "ioc." << len << '=' << ioc << '\n';
    if (r.selected_length) os << "selected_length=" << *r.selected_length << '\n';
    if (r.recovered_key) os << "recovered_key=" << to_string(*r.recovered_key) << '\n';
    if (r.chi_squared_per_letter) os << "chi_squared_per_letter=" << *r.chi_squared_per_letter << '\n';
    return os.str();
  }

  os << "Kasiski examination over " << r.letter_count << " letters\n";
  os << "Repeated n-grams: " << r.findings.size() << '\n';
  std::size_t shown = 0;
  for (const auto& f : r.findings) {
    if (shown++ == 10) {
      os << "  ...\n";
      break;
    }
    os << "  " << to_string(f.gram) << " at";
    for (auto p : f.positions) os << ' ' << p;
    os << "  distances";
    for (auto d : f.distances) os << ' ' << d;
    os << '\n';
  }
  os << "Key length candidates (length: score, mean column IoC):\n";
  shown = 0;
  for (const auto& c : r.key_length_candidates) {
    if (shown++ == 10) break;
    os << "  " << std::setw(2) << c.length << ": " << c.score;
    if (auto it = r.ioc_by_length.find(c.length); it != r.ioc_by_length.end()) os << ", " << it->second;
    os << '\n';
  }
  if (r.recovered_key) {
    os << "Recovered key: " << to_string(*r.recovered_key) << '\n';
    os << "Chi-squared per letter: " << *r.chi_squared_per_letter << '\n';
    os << "Decryption: " << r.decryption->substr(0, 60) << (r.decryption->size() > 60 ? "..." : "") << '\n';
  } else if (r.selected_length) {
    os << "Too few letters for key recovery at length " << *r.selected_length << '\n';
  }
  os << "Verdict: " << kasiski::verdict_name(r.verdict) << '\n';
  return os.str();
}

inline int cmd_attack(const CliConfig& cfg, const kasiski::AttackOptions& options, Streams io) {
  return guarded(io.err, [&] {
    auto text = MessageText::parse(read_input(cfg, io.in), cfg.policy);
    auto report = kasiski::attack(text, options);
    write_output(cfg, format_report(report, cfg.machine), io.out);
    return report.verdict == kasiski::Verdict::Broken ? int{kOk} : int{kResisted};
  });
}

}  // namespace vigkit::cli
