#include "leapt/external_endpoint.h"

#include <netdb.h>
#include <signal.h>
#include <sys/socket.h>
#include <sys/wait.h>
#include <unistd.h>

#include <cerrno>
#include <cstring>
#include <iostream>

#include "leapt/errors.h"

namespace leapt {

namespace {

void write_all(int fd, const std::string& data, bool is_socket) {
  size_t off = 0;
  while (off < data.size()) {
    ssize_t n = is_socket ? ::send(fd, data.data() + off, data.size() - off, MSG_NOSIGNAL)
                          : ::write(fd, data.data() + off, data.size() - off);
    if (n < 0) {
      if (errno == EINTR) continue;
      throw GatewayError(std::string("write to endpoint failed: ") + std::strerror(errno));
    }
    off += static_cast<size_t>(n);
  }
}

}  // namespace

std::shared_ptr<ExternalEndpoint> ExternalEndpoint::spawn(const std::string& command,
                                                          Duration timeout) {
  // A dead child must surface as a write error, not kill the caller.
  ::signal(SIGPIPE, SIG_IGN);
  int to_child[2], from_child[2];
  if (::pipe(to_child) != 0) throw GatewayError("pipe() failed");
  if (::pipe(from_child) != 0) {
    ::close(to_child[0]);
    ::close(to_child[1]);
    throw GatewayError("pipe() failed");
  }
  pid_t pid = ::fork();
  if (pid < 0) throw GatewayError("fork() failed");
  if (pid == 0) {
    // Own process group, so shutdown reaches whatever the shell started.
    ::setpgid(0, 0);
    ::dup2(to_child[0], STDIN_FILENO);
    ::dup2(from_child[1], STDOUT_FILENO);
    ::close(to_child[0]);
    ::close(to_child[1]);
    ::close(from_child[0]);
    ::close(from_child[1]);
    ::execl("/bin/sh", "sh", "-c", command.c_str(), static_cast<char*>(nullptr));
    ::_exit(127);
  }
  ::setpgid(pid, pid);
  ::close(to_child[0]);
  ::close(from_child[1]);
  return std::shared_ptr<ExternalEndpoint>(
      new ExternalEndpoint(from_child[0], to_child[1], pid, false, timeout));
}

std::shared_ptr<ExternalEndpoint> ExternalEndpoint::connect(const std::string& host,
                                                            int port, Duration timeout) {
  addrinfo hints{};
  hints.ai_family = AF_UNSPEC;
  hints.ai_socktype = SOCK_STREAM;
  addrinfo* res = nullptr;
  std::string service = std::to_string(port);
  if (int rc = ::getaddrinfo(host.c_str(), service.c_str(), &hints, &res); rc != 0) {
    throw GatewayError("cannot resolve " + host + ": " + ::gai_strerror(rc));
  }
  int fd = -1;
  for (addrinfo* ai = res; ai; ai = ai->ai_next) {
    fd = ::socket(ai->ai_family, ai->ai_socktype, ai->ai_protocol);
    if (fd < 0) continue;
    if (::connect(fd, ai->ai_addr, ai->ai_addrlen) == 0) break;
    ::close(fd);
    fd = -1;
  }
  ::freeaddrinfo(res);
  if (fd < 0) throw GatewayError("cannot connect to " + host + ":" + service);
  return std::shared_ptr<ExternalEndpoint>(new ExternalEndpoint(fd, fd, -1, true, timeout));
}

ExternalEndpoint::ExternalEndpoint(int read_fd, int write_fd, pid_t child,
                                   bool is_socket, Duration timeout)
    : read_fd_(read_fd),
      write_fd_(write_fd),
      child_(child),
      is_socket_(is_socket),
      timeout_(timeout) {
  reader_ = std::thread([this] { reader_loop(); });
}

ExternalEndpoint::~ExternalEndpoint() {
  if (is_socket_) {
    ::shutdown(read_fd_, SHUT_RDWR);
  } else {
    ::close(write_fd_);
    if (child_ > 0) ::kill(-child_, SIGTERM);
  }
  if (reader_.joinable()) reader_.join();
  ::close(read_fd_);
  if (child_ > 0) ::waitpid(child_, nullptr, 0);
}

bool ExternalEndpoint::alive() const {
  std::lock_guard lock(mu_);
  return !dead_;
}

void ExternalEndpoint::fail_all(const std::string& reason, const std::string& raw) {
  std::map<std::string, std::promise<std::string>> pending;
  {
    std::lock_guard lock(mu_);
    dead_ = true;
    dead_reason_ = reason;
    pending.swap(pending_);
  }
  for (auto& [id, promise] : pending) {
    promise.set_exception(std::make_exception_ptr(GatewayError(reason, raw)));
  }
}

void ExternalEndpoint::reader_loop() {
  std::string buffer;
  char chunk[4096];
  while (true) {
    ssize_t n = ::read(read_fd_, chunk, sizeof(chunk));
    if (n < 0 && errno == EINTR) continue;
    if (n <= 0) {
      fail_all("endpoint closed its output stream", {});
      return;
    }
    buffer.append(chunk, static_cast<size_t>(n));
    size_t nl;
    while ((nl = buffer.find('\n')) != std::string::npos) {
      std::string line = buffer.substr(0, nl);
      buffer.erase(0, nl + 1);
      if (line.empty()) continue;
      wire::Json msg;
      try {
        msg = wire::Json::parse(line);
        if (!msg.is_object() || !msg.contains("id") || !msg["id"].is_string()) {
          throw std::runtime_error("missing id");
        }
      } catch (const std::exception&) {
        std::cerr << "leapt: killing endpoint after non-parseable line: " << line << '\n';
        if (child_ > 0) ::kill(-child_, SIGKILL);
        if (is_socket_) ::shutdown(read_fd_, SHUT_RDWR);
        fail_all("endpoint emitted a non-parseable line", line);
        return;
      }
      std::promise<std::string> promise;
      {
        std::lock_guard lock(mu_);
        auto it = pending_.find(msg["id"].get<std::string>());
        if (it == pending_.end()) continue;  // late reply to a timed-out call
        promise = std::move(it->second);
        pending_.erase(it);
      }
      promise.set_value(std::move(line));
    }
  }
}

std::string ExternalEndpoint::call(wire::Json request) {
  std::string id = std::to_string(next_id_.fetch_add(1));
  request["id"] = id;
  std::future<std::string> reply;
  {
    std::lock_guard lock(mu_);
    if (dead_) throw GatewayError("endpoint is down: " + dead_reason_);
    reply = pending_[id].get_future();
  }
  std::string line = request.dump() + "\n";
  try {
    std::lock_guard lock(write_mu_);
    write_all(write_fd_, line, is_socket_);
  } catch (...) {
    std::lock_guard lock(mu_);
    pending_.erase(id);
    throw;
  }
  if (reply.wait_for(timeout_) != std::future_status::ready) {
    std::lock_guard lock(mu_);
    pending_.erase(id);
    throw GatewayError("endpoint timed out after " + std::to_string(timeout_.count()) +
                       " ms");
  }
  return reply.get();
}

CandidateSet ExternalEndpoint::translate(const TranslateRequest& request) {
  request.validate();
  std::string raw = call(wire::encode_translate_request("", request));
  CandidateSet set =
      wire::decode_translate_response(wire::Json::parse(raw), raw, request.beam_size);
  try {
    validate_candidates(request, set);
  } catch (const GatewayError& e) {
    throw GatewayError(e.what(), raw);
  }
  return set;
}

double ExternalEndpoint::score_boundary(std::span<const Token> src_prefix) {
  std::string raw = call(wire::encode_score_request("", src_prefix));
  return wire::decode_score_response(wire::Json::parse(raw), raw);
}

}  // namespace leapt
