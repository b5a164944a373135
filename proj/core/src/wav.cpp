#include "tstretch/wav.hpp"

#include <cmath>
#include <cstdint>
#include <cstring>
#include <fstream>
#include <vector>

#include "tstretch/errors.hpp"

namespace tstretch {
namespace {

constexpr std::uint16_t kFormatPcm = 1;
constexpr std::uint16_t kFormatFloat = 3;

struct Reader {
  const std::uint8_t* data;
  std::size_t size;
  std::size_t pos = 0;

  void need(std::size_t n) const {
    if (pos + n > size) throw CorruptFile("truncated wav file");
  }
  std::uint16_t u16() {
    need(2);
    std::uint16_t v = std::uint16_t(data[pos] | data[pos + 1] << 8);
    pos += 2;
    return v;
  }
  std::uint32_t u32() {
    need(4);
    std::uint32_t v = std::uint32_t(data[pos]) | std::uint32_t(data[pos + 1]) << 8 |
                      std::uint32_t(data[pos + 2]) << 16 | std::uint32_t(data[pos + 3]) << 24;
    pos += 4;
    return v;
  }
  bool tag(const char* t) {
    need(4);
    bool ok = std::memcmp(data + pos, t, 4) == 0;
    pos += 4;
    return ok;
  }
};

void put_u16(std::vector<std::uint8_t>& out, std::uint16_t v) {
  out.push_back(std::uint8_t(v & 0xff));
  out.push_back(std::uint8_t(v >> 8));
}

void put_u32(std::vector<std::uint8_t>& out, std::uint32_t v) {
  out.push_back(std::uint8_t(v & 0xff));
  out.push_back(std::uint8_t(v >> 8 & 0xff));
  out.push_back(std::uint8_t(v >> 16 & 0xff));
  out.push_back(std::uint8_t(v >> 24 & 0xff));
}

void put_tag(std::vector<std::uint8_t>& out, const char* t) {
  out.insert(out.end(), t, t + 4);
}

}  // namespace

Signal read_wav(const std::filesystem::path& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw IoError("cannot open " + path.string());
  std::vector<std::uint8_t> bytes((std::istreambuf_iterator<char>(in)),
                                  std::istreambuf_iterator<char>());
  if (in.bad()) throw IoError("read failure on " + path.string());

  Reader r{bytes.data(), bytes.size()};
  if (bytes.size() < 12 || !r.tag("RIFF")) throw CorruptFile("not a RIFF file: " + path.string());
  r.u32();  // declared riff size; files with a stale value are still readable
  if (!r.tag("WAVE")) throw CorruptFile("not a WAVE file: " + path.string());

  bool have_fmt = false;
  std::uint16_t format = 0, chans = 0, bits = 0;
  std::uint32_t rate = 0;
  const std::uint8_t* payload = nullptr;
  std::size_t payload_size = 0;

  while (r.pos + 8 <= r.size) {
    r.need(4);
    char id[4];
    std::memcpy(id, r.data + r.pos, 4);
    r.pos += 4;
    std::uint32_t chunk_size = r.u32();
    r.need(chunk_size);
    if (std::memcmp(id, "fmt ", 4) == 0) {
      if (chunk_size < 16) throw CorruptFile("fmt chunk too small");
      Reader f{r.data + r.pos, chunk_size};
      format = f.u16();
      chans = f.u16();
      rate = f.u32();
      f.u32();  // byte rate
      f.u16();  // block align
      bits = f.u16();
      have_fmt = true;
    } else if (std::memcmp(id, "data", 4) == 0) {
      payload = r.data + r.pos;
      payload_size = chunk_size;
    }
    r.pos += chunk_size + (chunk_size & 1);  // chunks are word-aligned
  }

  if (!have_fmt) throw CorruptFile("missing fmt chunk");
  if (payload == nullptr) throw CorruptFile("missing data chunk");
  if (rate == 0 || rate > 0x7fffffff) throw CorruptFile("bad sample rate");
  if (chans != 1 && chans != 2)
    throw UnsupportedFormat("only mono and stereo are supported, got " + std::to_string(chans) +
                            " channels");

  const bool pcm16 = format == kFormatPcm && bits == 16;
  const bool f32 = format == kFormatFloat && bits == 32;
  if (!pcm16 && !f32)
    throw UnsupportedFormat("only 16-bit PCM and 32-bit float are supported (format " +
                            std::to_string(format) + ", " + std::to_string(bits) + " bits)");

  const std::size_t bytes_per = pcm16 ? 2 : 4;
  const std::size_t stride = bytes_per * chans;
  if (payload_size % stride != 0) throw CorruptFile("data chunk is not a whole number of frames");
  const std::size_t nframes = payload_size / stride;
  if (nframes == 0) throw CorruptFile("data chunk is empty");

  Signal s;
  s.sample_rate = int(rate);
  s.samples.resize(nframes);
  for (std::size_t i = 0; i < nframes; ++i) {
    double acc = 0.0;
    for (std::size_t ch = 0; ch < chans; ++ch) {
      const std::uint8_t* p = payload + i * stride + ch * bytes_per;
      if (pcm16) {
        std::int16_t v;
        std::memcpy(&v, p, 2);
        acc += double(v) / 32768.0;
      } else {
        float v;
        std::memcpy(&v, p, 4);
        if (!std::isfinite(v)) throw CorruptFile("non-finite sample in " + path.string());
        acc += double(v);
      }
    }
    s.samples[i] = acc / double(chans);
  }
  return s;
}

void write_wav(const std::filesystem::path& path, const Signal& s) {
  validate(s);
  const std::uint32_t n = std::uint32_t(s.samples.size());
  std::vector<std::uint8_t> out;
  out.reserve(60 + 4 * std::size_t(n));
  put_tag(out, "RIFF");
  put_u32(out, 4 + 8 + 18 + 8 + 4 + 8 + 4 * n);
  put_tag(out, "WAVE");
  put_tag(out, "fmt ");
  put_u32(out, 18);
  put_u16(out, kFormatFloat);
  put_u16(out, 1);  // mono
  put_u32(out, std::uint32_t(s.sample_rate));
  put_u32(out, std::uint32_t(s.sample_rate) * 4);
  put_u16(out, 4);
  put_u16(out, 32);
  put_u16(out, 0);  // no format extension
  put_tag(out, "fact");
  put_u32(out, 4);
  put_u32(out, n);
  put_tag(out, "data");
  put_u32(out, 4 * n);
  for (double v : s.samples) {
    float f = float(v);
    std::uint32_t bits;
    std::memcpy(&bits, &f, 4);
    put_u32(out, bits);
  }

  std::ofstream file(path, std::ios::binary | std::ios::trunc);
  if (!file) throw IoError("cannot open " + path.string() + " for writing");
  file.write(reinterpret_cast<const char*>(out.data()), std::streamsize(out.size()));
  if (!file) throw IoError("write failure on " + path.string());
}

}  // namespace tstretch
