#include <httplib.h>

#include "grefute/service.hpp"

namespace grefute {

struct HttpFrontend::Impl {
  explicit Impl(Service& s) : service(s) {}
  Service& service;
  httplib::Server server;
};

HttpFrontend::HttpFrontend(Service& service) : impl_(std::make_unique<Impl>(service)) {
  auto route = [this](const httplib::Request& req, httplib::Response& res) {
    HttpReply r = impl_->service.handle(req.method, req.path, req.body);
    res.status = r.status;
    res.set_content(r.body, r.content_type.c_str());
  };
  impl_->server.Get(R"(/.*)", route);
  impl_->server.Post(R"(/.*)", route);
  // anything else is answered by the router too, so it can say 405
  impl_->server.Put(R"(/.*)", route);
  impl_->server.Delete(R"(/.*)", route);
  impl_->server.Patch(R"(/.*)", route);
}

HttpFrontend::~HttpFrontend() { stop(); }

int HttpFrontend::bind(const std::string& addr) {
  std::string host = "127.0.0.1";
  int port = 8080;
  auto colon = addr.rfind(':');
  try {
    if (colon == std::string::npos) {
      if (!addr.empty()) host = addr;
    } else {
      if (colon > 0) host = addr.substr(0, colon);
      port = std::stoi(addr.substr(colon + 1));
    }
  } catch (const std::exception&) {
    return -1;
  }
  if (port == 0) return impl_->server.bind_to_any_port(host);
  return impl_->server.bind_to_port(host, port) ? port : -1;
}

void HttpFrontend::run() { impl_->server.listen_after_bind(); }

void HttpFrontend::stop() {
  if (impl_) impl_->server.stop();
}

int serve_http(Service& service, const std::string& addr) {
  HttpFrontend http(service);
  if (http.bind(addr) < 0) return 1;
  http.run();
  return 0;
}

}  // namespace grefute
