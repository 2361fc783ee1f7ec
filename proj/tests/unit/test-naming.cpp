#include "ndnfw/naming.hpp"
#include "ndnfw/tlv.hpp"

#include "doctest.h"

#include <random>

using namespace ndnfw;

namespace {

const BaseName oilRig{{"OilRig-3", "IoTCompany-5", "Valve-7"}, 1632261600};

std::vector<std::string>
components(std::initializer_list<const char*> list)
{
  return {list.begin(), list.end()};
}

std::string
randomIdentifier(std::mt19937_64& rng)
{
  static const std::string alphabet =
    "abcdefghijklmnopqrstuvwxyzABCDEFGHIJKLMNOPQRSTUVWXYZ0123456789-_.~%";
  std::uniform_int_distribution<size_t> length(1, 20);
  std::uniform_int_distribution<size_t> pick(0, alphabet.size() - 1);
  std::string s(length(rng), ' ');
  for (auto& c : s) {
    c = alphabet[pick(rng)];
  }
  return s;
}

FirmwareName
randomName(std::mt19937_64& rng)
{
  BaseName base{{randomIdentifier(rng), randomIdentifier(rng), randomIdentifier(rng)}, rng()};
  switch (rng() % 3) {
    case 0:
      return FirmwareName::manifest(base);
    case 1:
      return FirmwareName::firmware(base);
    default:
      return FirmwareName::chunk(base, rng() >> (rng() % 64));
  }
}

} // namespace

TEST_CASE("parse_name examples")
{
  auto m = parseName(components({"OilRig-3", "IoTCompany-5", "Valve-7", "1632261600", "manifest"}));
  CHECK(m.epoch() == 1632261600u);
  CHECK(m.isManifest());
  CHECK(m.identity().deployment == "OilRig-3");
  CHECK(m.identity().vendor == "IoTCompany-5");
  CHECK(m.identity().deviceClass == "Valve-7");

  auto c = parseName(components({"D", "V", "C", "0", "chunk", "0"}));
  CHECK(c.epoch() == 0u);
  CHECK(c.chunkId() == 0u);

  CHECK_THROWS_AS(parseName(components({"D", "V", "C", "10", "chunk", "-1"})), MalformedName);
}

TEST_CASE("parse_name rejects malformed component sequences")
{
  auto bad = {
    components({"D", "V", "C", "10"}),
    components({"D", "V", "C", "10", "manifest", "x"}),
    components({"D", "V", "C", "10", "chunk"}),
    components({"D", "V", "C", "10", "chunk", "1", "2"}),
    components({"D", "V", "C", "10", "chunk", "01"}),
    components({"D", "V", "C", "10", "chunk", "1a"}),
    components({"D", "V", "C", "10", "chunk", "18446744073709551616"}),
    components({"D", "V", "C", "-10", "manifest"}),
    components({"D", "V", "C", "", "manifest"}),
    components({"D", "V", "C", "10", "image"}),
    components({"", "V", "C", "10", "manifest"}),
    components({"D", "V/x", "C", "10", "manifest"}),
  };
  for (const auto& c : bad) {
    CAPTURE(c.size());
    CHECK_THROWS_AS(parseName(c), MalformedName);
  }
  CHECK(parseName(components({"D", "V", "C", "10", "chunk", "18446744073709551615"})).chunkId() ==
        UINT64_MAX);
}

TEST_CASE("format_name examples")
{
  CHECK(formatName(FirmwareName::chunk(oilRig, 42)) ==
        components({"OilRig-3", "IoTCompany-5", "Valve-7", "1632261600", "chunk", "42"}));
  CHECK(formatName(FirmwareName::firmware(oilRig)).back() == "firmware");
  CHECK(formatName(FirmwareName::manifest(oilRig)).back() == "manifest");
  CHECK(FirmwareName::manifest(oilRig).toUri() ==
        "/OilRig-3/IoTCompany-5/Valve-7/1632261600/manifest");
}

TEST_CASE("constructing a name validates identifiers")
{
  CHECK_THROWS_AS(FirmwareName::manifest({{"", "v", "c"}, 1}), MalformedName);
  CHECK_THROWS_AS(FirmwareName::manifest({{"d", "v/w", "c"}, 1}), MalformedName);
  CHECK_THROWS_AS(FirmwareName::manifest({{"d", "v", std::string("c\0", 2)}, 1}), MalformedName);
}

TEST_CASE("property: names round-trip through components, URI and TLV")
{
  std::mt19937_64 rng(11);
  for (int i = 0; i < 2000; ++i) {
    auto name = randomName(rng);
    CAPTURE(name.toUri());
    CHECK(parseName(formatName(name)) == name);
    CHECK(parseUri(name.toUri()) == name);
    CHECK(decodeName(encodeName(name)) == name);
    CHECK(decodeBaseName(encodeBaseName(name.base())) == name.base());
  }
}

TEST_CASE("parseUri requires a leading slash")
{
  CHECK_THROWS_AS(parseUri("D/V/C/1/manifest"), MalformedName);
  CHECK_THROWS_AS(parseUri(""), MalformedName);
  CHECK_THROWS_AS(parseUri("/D/V/C/1/manifest/"), MalformedName);
}

TEST_CASE("align_epoch examples")
{
  // 2021-09-22 13:47:00 at UTC+2
  CHECK(alignEpoch(1632311220, Granularity(86400, -7200)) == 1632261600u);
  CHECK(alignEpoch(86400, Granularity(86400, 0)) == 86400u);
  CHECK(alignEpoch(86399, Granularity(86400, 0)) == 0u);
  CHECK(alignEpoch(0, Granularity(86400, 0)) == 0u);
  // nothing aligned at or before t: clamp to zero
  CHECK(alignEpoch(100, Granularity(86400, 3600)) == 0u);
}

TEST_CASE("granularity bounds")
{
  CHECK_THROWS_AS(Granularity(0, 0), std::invalid_argument);
  CHECK_THROWS_AS(Granularity(-5, 0), std::invalid_argument);
  CHECK_THROWS_AS(Granularity(60, 60), std::invalid_argument);
  CHECK_THROWS_AS(Granularity(60, -60), std::invalid_argument);
  CHECK_NOTHROW(Granularity(60, 59));
  CHECK_NOTHROW(Granularity(60, -59));
}

TEST_CASE("property: align_epoch is a floor onto the aligned lattice")
{
  std::mt19937_64 rng(3);
  std::uniform_int_distribution<int64_t> periods(1, 7 * 86400);
  std::uniform_int_distribution<uint64_t> times(0, 4'000'000'000ull);
  for (int i = 0; i < 5000; ++i) {
    int64_t period = periods(rng);
    int64_t offset = std::uniform_int_distribution<int64_t>(-period + 1, period - 1)(rng);
    Granularity g(period, offset);
    uint64_t t = times(rng);
    uint64_t a = alignEpoch(t, g);
    CAPTURE(period);
    CAPTURE(offset);
    CAPTURE(t);
    CHECK(a <= t);
    CHECK(alignEpoch(a, g) == a);
    if (t >= static_cast<uint64_t>(2 * period)) {
      CHECK(t - a < static_cast<uint64_t>(period));
      int64_t residue = (static_cast<int64_t>(a) - offset) % period;
      CHECK(residue == 0);
    }
    uint64_t later = t + std::uniform_int_distribution<uint64_t>(0, 3 * period)(rng);
    CHECK(alignEpoch(later, g) >= a);
  }
}

TEST_CASE("encoded_size examples")
{
  auto chunk = FirmwareName::chunk({{"iotlab", "haw", "m3-fw"}, 1632261600}, 0);
  CHECK(encodedSize(chunk, NameEncodingModel::ndnTlv()) == 45);

  auto abc = FirmwareName::manifest({{"a", "b", "c"}, 0});
  CHECK(encodedSize(abc, NameEncodingModel::raw()) == 12);

  NameEncodingModel one{0, 1, 0};
  CHECK(encodedSize(abc, one) - encodedSize(abc, NameEncodingModel::raw()) ==
        formatName(abc).size());
}

TEST_CASE("property: encoded_size is linear in the per-component overhead")
{
  std::mt19937_64 rng(5);
  for (int i = 0; i < 500; ++i) {
    auto name = randomName(rng);
    size_t k = rng() % 5;
    NameEncodingModel a{rng() % 4, k, 0};
    NameEncodingModel b = a;
    b.componentOverhead += 1;
    CHECK(encodedSize(name, b) == encodedSize(name, a) + formatName(name).size());
  }
}

TEST_CASE("TLV varnumber and block encoding")
{
  for (uint64_t v : {0ull, 252ull, 253ull, 65535ull, 65536ull, 4294967295ull, 4294967296ull}) {
    tlv::Encoder enc;
    enc.appendVarNumber(v);
    tlv::Decoder dec(enc.bytes());
    CHECK(dec.readVarNumber() == v);
    CHECK(dec.atEnd());
  }
  tlv::Encoder enc;
  enc.appendVarNumber(253);
  CHECK(enc.bytes() == Bytes{0xFD, 0x00, 0xFD});

  // Name TLV of /D/V/C/0: type 7, generic components of type 8
  auto wire = encodeBaseName({{"D", "V", "C"}, 0});
  CHECK(wire == Bytes{0x07, 0x0C, 0x08, 0x01, 'D', 0x08, 0x01, 'V', 0x08, 0x01, 'C', 0x08, 0x01, '0'});
}

TEST_CASE("TLV decoding rejects truncated and mistyped input")
{
  auto wire = encodeName(FirmwareName::chunk(oilRig, 7));
  for (size_t cut = 0; cut < wire.size(); ++cut) {
    Bytes prefix(wire.begin(), wire.begin() + static_cast<std::ptrdiff_t>(cut));
    CHECK_THROWS(decodeName(prefix));
  }
  Bytes mistyped = wire;
  mistyped[0] = 0x06;
  CHECK_THROWS_AS(decodeName(mistyped), DecodeError);
  Bytes trailing = wire;
  trailing.push_back(0);
  CHECK_THROWS(decodeName(trailing));
}
