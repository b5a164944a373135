#pragma once

#include <filesystem>

#include "tstretch/signal.hpp"

namespace tstretch {

// Reads a RIFF/WAVE file. Accepted encodings: PCM 16-bit (scaled by 1/32768)
// and IEEE float 32-bit, mono or stereo; stereo is averaged to mono. Unknown
// chunks are skipped. Float samples outside [-1, 1] are kept as-is.
//
// Throws UnsupportedFormat for other encodings/channel counts, CorruptFile
// for structural damage, IoError when the file cannot be opened.
Signal read_wav(const std::filesystem::path& path);

// Writes mono IEEE float 32-bit.
void write_wav(const std::filesystem::path& path, const Signal& s);

}  // namespace tstretch
