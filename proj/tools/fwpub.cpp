// fwpub: chunk, tag, sign and publish one firmware release into a repository
// directory.

#include "ndnfw/repository.hpp"

#include "CLI11.hpp"

#include <fstream>
#include <iomanip>
#include <iostream>
#include <iterator>
#include <sstream>

using namespace ndnfw;

namespace {

Bytes
readAll(const std::string& path)
{
  std::ifstream in(path, std::ios::binary);
  if (!in) {
    throw std::runtime_error("cannot open " + path);
  }
  return Bytes(std::istreambuf_iterator<char>(in), {});
}

std::string
hex(ByteSpan bytes)
{
  std::ostringstream os;
  for (uint8_t b : bytes) {
    os << std::hex << std::setw(2) << std::setfill('0') << static_cast<int>(b);
  }
  return os.str();
}

} // namespace

int
main(int argc, char** argv)
{
  CLI::App app{"Publish a firmware release: manifest.bin and chunks.bin under the repository"};
  std::string image, deployment, vendor, deviceClass, pskFile, keyFile, repo;
  uint64_t epoch = 0;
  size_t chunkSize = 0;
  size_t tagLength = 8;
  app.add_option("--image", image, "Firmware image file")->required();
  app.add_option("--deployment", deployment, "Deployment identifier")->required();
  app.add_option("--vendor", vendor, "Vendor identifier")->required();
  app.add_option("--class", deviceClass, "Device class identifier")->required();
  app.add_option("--epoch", epoch, "Release epoch, seconds since the Unix epoch")->required();
  app.add_option("--chunk-size", chunkSize, "Chunk payload size in bytes")->required();
  app.add_option("--psk-file", pskFile, "Pre-shared key of the device class (raw bytes)")
    ->required();
  app.add_option("--key-file", keyFile,
                 "Signing key material; the Ed25519 seed is its SHA-256 digest")
    ->required();
  app.add_option("--repo", repo, "Repository root directory")->required();
  app.add_option("--tag-len", tagLength, "Chunk tag length: 8, 16 or 32")->capture_default_str();

  try {
    app.parse(argc, argv);
  }
  catch (const CLI::ParseError& e) {
    int code = app.exit(e);
    return code == 0 ? 0 : 2;
  }

  try {
    Bytes psk = readAll(pskFile);
    if (psk.empty()) {
      throw std::invalid_argument("pre-shared key file is empty");
    }
    SigningKey key = SigningKey::fromPassphrase(readAll(keyFile));
    Vendor v(deployment, vendor, std::move(key), tagLength);
    v.setPsk(deviceClass, psk);
    Release release = v.prepare({readAll(image), deviceClass, epoch}, chunkSize);

    // validates against releases already on disk
    Repository existing = Repository::load(repo);
    existing.publish(release.manifest, release.chunks);
    Repository::writeRelease(repo, release);

    const Manifest& m = release.manifest;
    std::cout << "published " << FirmwareName::manifest(m.baseName).toUri() << '\n'
              << "  image_size " << m.imageSize << '\n'
              << "  chunk_size " << m.chunkSize << '\n'
              << "  chunk_count " << m.chunkCount << '\n'
              << "  digest " << hex(m.imageDigest) << '\n'
              << "  vendor_key " << hex(v.publicKey().bytes) << '\n';
    return 0;
  }
  catch (const std::invalid_argument& e) {
    std::cerr << "fwpub: " << e.what() << '\n';
    return 2;
  }
  catch (const std::exception& e) {
    std::cerr << "fwpub: " << e.what() << '\n';
    return 1;
  }
}
