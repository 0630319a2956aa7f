// libFuzzer target for the frame decoder. Build with -DVIGKIT_FUZZ=ON using
// clang, then run e.g. `./frame_fuzzer -max_total_time=60`.

#include <cstddef>
#include <cstdint>
#include <cstdlib>
#include <string>

#include "vigkit/frame.hpp"

extern "C" int LLVMFuzzerTestOneInput(const uint8_t* data, size_t size) {
  std::string line(reinterpret_cast<const char*>(data), size);
  try {
    auto msg = vigkit::decode_line(line);
    // Anything that decodes must re-encode to an equivalent frame.
    if (auto* f = std::get_if<vigkit::Frame>(&msg)) {
      if (!(vigkit::decode_frame(vigkit::encode_frame(*f)) == *f)) std::abort();
    }
  } catch (const vigkit::Error&) {
    // typed rejection is the expected outcome for malformed input
  }
  return 0;
}
