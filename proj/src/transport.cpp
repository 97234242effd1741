#include "mpcl/transport.hpp"

#include <arpa/inet.h>
#include <fcntl.h>
#include <netinet/in.h>
#include <netinet/tcp.h>
#include <poll.h>
#include <sys/socket.h>
#include <unistd.h>

#include <cstring>
#include <stdexcept>

namespace mpcl {

namespace {

void put_u32(std::string& s, uint32_t v) {
    for (int i = 0; i < 4; ++i) s.push_back(char((v >> (8 * i)) & 0xff));
}
void put_u16(std::string& s, uint16_t v) {
    s.push_back(char(v & 0xff));
    s.push_back(char((v >> 8) & 0xff));
}
uint32_t get_u32(const char* p) {
    uint32_t v = 0;
    for (int i = 3; i >= 0; --i) v = (v << 8) | uint8_t(p[i]);
    return v;
}

[[noreturn]] void die(const char* what) {
    throw std::runtime_error(std::string("transport: ") + what + ": " +
                             std::strerror(errno));
}

}  // namespace

std::string frame_message(uint32_t round, uint32_t batch_id, uint16_t from,
                          uint16_t to, const std::string& payload) {
    std::string s;
    s.reserve(kFrameHeaderBytes + payload.size());
    put_u32(s, uint32_t(payload.size()));
    put_u32(s, round);
    put_u32(s, batch_id);
    put_u16(s, from);
    put_u16(s, to);
    s += payload;
    return s;
}

void InProcTransport::exchange(uint32_t round, uint32_t batch_id,
                               const std::vector<std::vector<std::string>>& out,
                               std::vector<std::vector<std::string>>& in) {
    (void)round;
    (void)batch_id;
    in.assign(size_t(n_), std::vector<std::string>(size_t(n_)));
    for (int i = 0; i < n_; ++i)
        for (int j = 0; j < n_; ++j) {
            if (i == j) continue;
            in[size_t(j)][size_t(i)] = out[size_t(i)][size_t(j)];
        }
}

TcpTransport::TcpTransport(int n, int port_base) : n_(n) {
    fd_.assign(size_t(n), std::vector<int>(size_t(n), -1));
    // listeners for every party
    std::vector<int> listeners(size_t(n), -1);
    for (int i = 0; i < n; ++i) {
        int fd = socket(AF_INET, SOCK_STREAM, 0);
        if (fd < 0) die("socket");
        int one = 1;
        setsockopt(fd, SOL_SOCKET, SO_REUSEADDR, &one, sizeof one);
        sockaddr_in addr{};
        addr.sin_family = AF_INET;
        addr.sin_addr.s_addr = htonl(INADDR_LOOPBACK);
        addr.sin_port = htons(uint16_t(port_base + i));
        if (bind(fd, reinterpret_cast<sockaddr*>(&addr), sizeof addr) < 0)
            die("bind");
        if (listen(fd, n) < 0) die("listen");
        listeners[size_t(i)] = fd;
    }
    // party j > i connects to i's port; i accepts and learns j from a hello
    for (int i = 0; i < n; ++i) {
        for (int j = i + 1; j < n; ++j) {
            int fd = socket(AF_INET, SOCK_STREAM, 0);
            if (fd < 0) die("socket");
            sockaddr_in addr{};
            addr.sin_family = AF_INET;
            addr.sin_addr.s_addr = htonl(INADDR_LOOPBACK);
            addr.sin_port = htons(uint16_t(port_base + i));
            if (connect(fd, reinterpret_cast<sockaddr*>(&addr), sizeof addr) <
                0)
                die("connect");
            uint16_t hello = uint16_t(j);
            if (write(fd, &hello, 2) != 2) die("hello write");
            int afd = accept(listeners[size_t(i)], nullptr, nullptr);
            if (afd < 0) die("accept");
            uint16_t who = 0;
            if (read(afd, &who, 2) != 2) die("hello read");
            fd_[size_t(i)][size_t(who)] = afd;
            fd_[size_t(who)][size_t(i)] = fd;
        }
    }
    for (int fd : listeners) close(fd);
    for (int i = 0; i < n; ++i)
        for (int j = 0; j < n; ++j)
            if (fd_[size_t(i)][size_t(j)] >= 0) {
                int one = 1;
                setsockopt(fd_[size_t(i)][size_t(j)], IPPROTO_TCP, TCP_NODELAY,
                           &one, sizeof one);
                int flags = fcntl(fd_[size_t(i)][size_t(j)], F_GETFL, 0);
                fcntl(fd_[size_t(i)][size_t(j)], F_SETFL, flags | O_NONBLOCK);
            }
}

TcpTransport::~TcpTransport() {
    for (auto& row : fd_)
        for (int fd : row)
            if (fd >= 0) close(fd);
}

void TcpTransport::exchange(uint32_t round, uint32_t batch_id,
                            const std::vector<std::vector<std::string>>& out,
                            std::vector<std::vector<std::string>>& in) {
    in.assign(size_t(n_), std::vector<std::string>(size_t(n_)));

    struct Chan {
        int fd;
        int from, to;         // the direction this entry tracks for writes
        std::string wbuf;     // pending outgoing bytes (from -> to)
        size_t wpos = 0;
    };
    // One write job per ordered pair, one read job per ordered pair; a
    // socket carries both directions of its pair.
    std::vector<Chan> chans;
    for (int i = 0; i < n_; ++i)
        for (int j = 0; j < n_; ++j) {
            if (i == j) continue;
            Chan c;
            c.fd = fd_[size_t(i)][size_t(j)];
            c.from = i;
            c.to = j;
            c.wbuf = frame_message(round, batch_id, uint16_t(i), uint16_t(j),
                                   out[size_t(i)][size_t(j)]);
            chans.push_back(std::move(c));
        }

    // reads are keyed by the receiving end of each socket
    struct Rd {
        std::string buf;
        bool done = false;
    };
    // reader state per (receiver, sender)
    std::vector<std::vector<Rd>> rd(size_t(n_), std::vector<Rd>(size_t(n_)));
    size_t pending_reads = size_t(n_) * size_t(n_ - 1);
    size_t pending_writes = chans.size();

    while (pending_reads > 0 || pending_writes > 0) {
        std::vector<pollfd> pfds;
        std::vector<size_t> widx;
        for (size_t k = 0; k < chans.size(); ++k) {
            short ev = 0;
            if (chans[k].wpos < chans[k].wbuf.size()) ev |= POLLOUT;
            if (!rd[size_t(chans[k].from)][size_t(chans[k].to)].done)
                ev |= POLLIN;  // the from-side reads what `to` sends back
            if (ev == 0) continue;
            pfds.push_back({chans[k].fd, ev, 0});
            widx.push_back(k);
        }
        if (pfds.empty()) break;
        if (poll(pfds.data(), nfds_t(pfds.size()), 10000) < 0) die("poll");
        for (size_t m = 0; m < pfds.size(); ++m) {
            Chan& c = chans[widx[m]];
            if (pfds[m].revents & POLLOUT) {
                ssize_t w = write(c.fd, c.wbuf.data() + c.wpos,
                                  c.wbuf.size() - c.wpos);
                if (w < 0 && errno != EAGAIN && errno != EWOULDBLOCK)
                    die("write");
                if (w > 0) {
                    c.wpos += size_t(w);
                    if (c.wpos == c.wbuf.size()) --pending_writes;
                }
            }
            if (pfds[m].revents & (POLLIN | POLLHUP)) {
                // data arriving on this socket is from `to`, addressed to
                // `from` (this chan views the socket from its write side)
                Rd& r = rd[size_t(c.from)][size_t(c.to)];
                if (!r.done) {
                    char tmp[65536];
                    ssize_t g = read(c.fd, tmp, sizeof tmp);
                    if (g < 0 && errno != EAGAIN && errno != EWOULDBLOCK)
                        die("read");
                    if (g > 0) {
                        r.buf.append(tmp, size_t(g));
                        if (r.buf.size() >= kFrameHeaderBytes) {
                            uint32_t len = get_u32(r.buf.data());
                            if (r.buf.size() >= kFrameHeaderBytes + len) {
                                in[size_t(c.from)][size_t(c.to)] = r.buf.substr(
                                    kFrameHeaderBytes, len);
                                r.done = true;
                                --pending_reads;
                            }
                        }
                    }
                }
            }
        }
    }
    if (pending_reads > 0) throw std::runtime_error("transport: short round");
}

std::unique_ptr<Transport> make_transport(const std::string& kind, int n,
                                          int port_base) {
    if (kind == "inproc") return std::make_unique<InProcTransport>(n);
    if (kind == "tcp") return std::make_unique<TcpTransport>(n, port_base);
    throw std::invalid_argument("unknown transport: " + kind);
}

}  // namespace mpcl
