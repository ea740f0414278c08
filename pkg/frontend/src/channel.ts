/**
 * Client side of the project channel.
 *
 * The service replays recent chat after a reconnect, so delivery is at
 * least once. The channel dedupes chat frames by message id before the
 * rest of the UI sees them; other frame kinds are passed through as is.
 */

import {
  CLOSE_NOT_FOUND,
  CLOSE_NOT_MEMBER,
  CLOSE_REPLACED,
  type ChannelFrame,
} from "./types.js";

export interface SocketLike {
  send(data: string): void;
  close(code?: number, reason?: string): void;
  onopen: ((event?: unknown) => void) | null;
  onmessage: ((event: { data: unknown }) => void) | null;
  onclose: ((event: { code: number }) => void) | null;
  onerror: ((event?: unknown) => void) | null;
}

export type SocketFactory = (url: string) => SocketLike;

export type FrameHandler = (frame: ChannelFrame) => void;

export interface ChannelOptions {
  socketFactory?: SocketFactory;
  /** Delay before dialing again after an unexpected drop. null disables. */
  reconnectDelayMs?: number | null;
}

/** Build the websocket address for a project channel from an HTTP base. */
export function channelUrl(base: string, project: string, user: string): string {
  const origin = base || (typeof location !== "undefined" ? location.origin : "");
  const ws = origin.replace(/\/$/, "").replace(/^http/, "ws");
  return `${ws}/projects/${project}/channel?user=${encodeURIComponent(user)}`;
}

// deliberate refusals; dialing again would just be refused again
const REFUSED = new Set([CLOSE_REPLACED, CLOSE_NOT_FOUND, CLOSE_NOT_MEMBER]);

export class ProjectChannel {
  private readonly url: string;
  private readonly factory: SocketFactory;
  private readonly reconnectDelayMs: number | null;
  private readonly handlers = new Set<FrameHandler>();
  private readonly seenChat = new Set<string>();
  private socket: SocketLike | null = null;
  private timer: ReturnType<typeof setTimeout> | null = null;
  private stopped = false;

  constructor(url: string, options: ChannelOptions = {}) {
    this.url = url;
    this.factory =
      options.socketFactory ?? ((address) => new WebSocket(address) as unknown as SocketLike);
    this.reconnectDelayMs =
      options.reconnectDelayMs === undefined ? 1000 : options.reconnectDelayMs;
  }

  connect(): void {
    if (this.stopped || this.socket) return;
    const socket = this.factory(this.url);
    this.socket = socket;
    socket.onmessage = (event) => this.dispatchRaw(String(event.data));
    socket.onclose = (event) => {
      if (this.socket === socket) this.socket = null;
      if (this.stopped || REFUSED.has(event.code)) return;
      this.scheduleReconnect();
    };
  }

  /** Register a frame handler. Returns a function that removes it. */
  onFrame(handler: FrameHandler): () => void {
    this.handlers.add(handler);
    return () => this.handlers.delete(handler);
  }

  sendChat(body: string): void {
    this.socket?.send(JSON.stringify({ type: "chat", body }));
  }

  close(): void {
    this.stopped = true;
    if (this.timer !== null) {
      clearTimeout(this.timer);
      this.timer = null;
    }
    this.socket?.close();
    this.socket = null;
  }

  private dispatchRaw(data: string): void {
    let frame: ChannelFrame;
    try {
      frame = JSON.parse(data) as ChannelFrame;
    } catch {
      return;
    }
    if (frame.type === "chat") {
      if (this.seenChat.has(frame.id)) return;
      this.seenChat.add(frame.id);
    }
    for (const handler of [...this.handlers]) handler(frame);
  }

  private scheduleReconnect(): void {
    if (this.reconnectDelayMs === null || this.timer !== null) return;
    this.timer = setTimeout(() => {
      this.timer = null;
      this.connect();
    }, this.reconnectDelayMs);
  }
}
