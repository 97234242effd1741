#pragma once

#include <cstdint>
#include <memory>
#include <string>
#include <vector>

namespace mpcl {

// Frame header carried by every message, identical on both transports so
// byte counts and transcripts are comparable:
//   u32 payload_len | u32 round | u32 batch_id | u16 sender | u16 receiver
constexpr size_t kFrameHeaderBytes = 16;

std::string frame_message(uint32_t round, uint32_t batch_id, uint16_t from,
                          uint16_t to, const std::string& payload);

// Moves one round of pairwise messages. out[i][j] is the payload party i
// sends to party j (diagonal unused); on return in[j][i] holds what j
// received from i.
class Transport {
  public:
    virtual ~Transport() = default;
    virtual void exchange(uint32_t round, uint32_t batch_id,
                          const std::vector<std::vector<std::string>>& out,
                          std::vector<std::vector<std::string>>& in) = 0;
    virtual const char* name() const = 0;
};

class InProcTransport final : public Transport {
  public:
    explicit InProcTransport(int n) : n_(n) {}
    void exchange(uint32_t round, uint32_t batch_id,
                  const std::vector<std::vector<std::string>>& out,
                  std::vector<std::vector<std::string>>& in) override;
    const char* name() const override { return "inproc"; }

  private:
    int n_;
};

// Loopback TCP: party i accepts on port_base + i, higher-numbered parties
// connect down, one full-duplex socket per unordered pair. All endpoints
// live in this process; the wire traffic is real.
class TcpTransport final : public Transport {
  public:
    TcpTransport(int n, int port_base);
    ~TcpTransport() override;
    void exchange(uint32_t round, uint32_t batch_id,
                  const std::vector<std::vector<std::string>>& out,
                  std::vector<std::vector<std::string>>& in) override;
    const char* name() const override { return "tcp"; }

  private:
    int n_;
    // socket fd for each ordered pair (i, j), shared between directions
    std::vector<std::vector<int>> fd_;
};

std::unique_ptr<Transport> make_transport(const std::string& kind, int n,
                                          int port_base);

}  // namespace mpcl
